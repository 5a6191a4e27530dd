#pragma once

#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tailkit/core.hpp"

namespace tailkit::jsonout {

/// Minimal deterministic JSON value. Doubles print with 17 significant
/// digits so every emitted number parses back bit-exactly.
class Value {
public:
    Value() : kind_(Kind::null) {}
    Value(double v) : kind_(Kind::number), num_(v) {}
    Value(int v) : kind_(Kind::integer), int_(v) {}
    Value(long long v) : kind_(Kind::integer), int_(v) {}
    Value(std::size_t v) : kind_(Kind::integer), int_(static_cast<long long>(v)) {}
    Value(bool v) : kind_(Kind::boolean), bool_(v) {}
    Value(const char* v) : kind_(Kind::string), str_(v) {}
    Value(std::string v) : kind_(Kind::string), str_(std::move(v)) {}

    static Value array() {
        Value v;
        v.kind_ = Kind::array;
        return v;
    }
    static Value object() {
        Value v;
        v.kind_ = Kind::object;
        return v;
    }
    static Value array_of(const std::vector<double>& xs) {
        Value v = array();
        for (double x : xs) v.push_back(Value(x));
        return v;
    }

    Value& push_back(Value v) {
        items_.push_back(std::move(v));
        return items_.back();
    }
    Value& set(const std::string& key, Value v) {
        for (auto& [k, existing] : fields_)
            if (k == key) {
                existing = std::move(v);
                return existing;
            }
        fields_.emplace_back(key, std::move(v));
        return fields_.back().second;
    }

    std::string dump() const {
        std::string out;
        write(out);
        return out;
    }

private:
    enum class Kind { null, number, integer, boolean, string, array, object };

    static void escape(const std::string& s, std::string& out) {
        out += '"';
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default: out += c;
            }
        }
        out += '"';
    }

    void write(std::string& out) const {
        char buf[64];
        switch (kind_) {
            case Kind::null: out += "null"; return;
            case Kind::number:
                if (std::isfinite(num_)) {
                    std::snprintf(buf, sizeof(buf), "%.17g", num_);
                    out += buf;
                } else if (std::isnan(num_)) {
                    out += "\"nan\"";
                } else {
                    out += num_ > 0 ? "\"inf\"" : "\"-inf\"";
                }
                return;
            case Kind::integer:
                std::snprintf(buf, sizeof(buf), "%lld", int_);
                out += buf;
                return;
            case Kind::boolean: out += bool_ ? "true" : "false"; return;
            case Kind::string: escape(str_, out); return;
            case Kind::array: {
                out += '[';
                for (std::size_t i = 0; i < items_.size(); ++i) {
                    if (i) out += ',';
                    items_[i].write(out);
                }
                out += ']';
                return;
            }
            case Kind::object: {
                out += '{';
                for (std::size_t i = 0; i < fields_.size(); ++i) {
                    if (i) out += ',';
                    escape(fields_[i].first, out);
                    out += ':';
                    fields_[i].second.write(out);
                }
                out += '}';
                return;
            }
        }
    }

    Kind kind_;
    double num_ = 0.0;
    long long int_ = 0;
    bool bool_ = false;
    std::string str_;
    std::vector<Value> items_;
    std::vector<std::pair<std::string, Value>> fields_;
};

}  // namespace tailkit::jsonout
