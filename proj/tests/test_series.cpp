#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "tailkit/core.hpp"
#include "tailkit/csv.hpp"
#include "tailkit/rng.hpp"

using namespace tailkit;

namespace {

struct TempCsv {
    std::string path;
    explicit TempCsv(const std::string& content) {
        static int counter = 0;
        path = "tailkit_test_" + std::to_string(counter++) + ".csv";
        std::ofstream out(path);
        out << content;
    }
    ~TempCsv() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("load_csv reads the value column in file order") {
    TempCsv f("date,price\n2020-01-01,100\n2020-01-02,110\n2020-01-03,105\n");
    const auto s = load_csv(f.path, ColumnSpec::by_name("price"), Convention::price,
                            ColumnSpec::by_name("date"));
    REQUIRE(s.size() == 3);
    CHECK(s.values[0] == 100.0);
    CHECK(s.values[2] == 105.0);
    CHECK(s.timestamps[1] == "2020-01-02");
    s.validate();
}

TEST_CASE("load_csv rejects blank cells unless skipping is requested") {
    TempCsv f("p\n1.5\n\n2.5\n");
    CHECK_THROWS_AS(load_csv(f.path, ColumnSpec::by_name("p")), Error);
    CsvOptions skip;
    skip.skip_bad = true;
    const auto s = load_csv(f.path, ColumnSpec::by_name("p"), Convention::price,
                            std::nullopt, skip);
    REQUIRE(s.size() == 2);
    CHECK(s.values[1] == 2.5);
}

TEST_CASE("load_csv error paths") {
    CHECK_THROWS_AS(load_csv("does_not_exist.csv", ColumnSpec::by_index(0)), Error);
    TempCsv f("a,b\n1,2\n");
    CHECK_THROWS_AS(load_csv(f.path, ColumnSpec::by_name("c")), Error);
    TempCsv empty("a\n");
    CHECK_THROWS_AS(load_csv(empty.path, ColumnSpec::by_name("a")), Error);
}

TEST_CASE("load_csv honors the semicolon separator") {
    TempCsv f("date;close\n2020-01-01;10.5\n2020-01-02;11.25\n");
    CsvOptions opts;
    opts.sep = ';';
    const auto s = load_csv(f.path, ColumnSpec::by_name("close"), Convention::price,
                            std::nullopt, opts);
    REQUIRE(s.size() == 2);
    CHECK(s.values[1] == 11.25);
}

TEST_CASE("to_returns simple and log") {
    ReturnSeries p;
    p.convention = Convention::price;
    p.values = {100.0, 110.0};
    CHECK(to_returns(p, ReturnMode::simple).values[0] == Catch::Approx(0.10));

    p.values = {100.0, 100.0};
    CHECK(to_returns(p, ReturnMode::log).values[0] == Catch::Approx(0.0).margin(1e-15));

    p.values = {100.0, -5.0};
    CHECK_THROWS_AS(to_returns(p, ReturnMode::log), Error);

    p.values = {100.0};
    CHECK_THROWS_AS(to_returns(p, ReturnMode::simple), Error);
}

TEST_CASE("simple and log returns agree to first order") {
    ReturnSeries p;
    p.convention = Convention::price;
    p.values = {100.0, 104.0, 99.0, 120.0, 95.0, 100.0};
    const auto rs = to_returns(p, ReturnMode::simple).values;
    const auto rl = to_returns(p, ReturnMode::log).values;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        REQUIRE(std::abs(rs[i]) < 0.5);
        CHECK(std::abs(rs[i] - rl[i]) <= 0.75 * rs[i] * rs[i]);
    }
}

TEST_CASE("summary_stats basics") {
    ReturnSeries s;
    s.values = {-1.0, 1.0};
    const double sd = sample_std(s.values);
    CHECK(sample_mean(s.values) == Catch::Approx(0.0).margin(1e-16));
    CHECK(sd == Catch::Approx(std::sqrt(2.0)));

    s.values = {2.0, 2.0, 2.0, 2.0};
    CHECK_THROWS_AS(summary_stats(s), Error);
}

TEST_CASE("summary_stats mean/std match a two-pass reference") {
    mc::RngStream stream(11, 0);
    ReturnSeries s;
    s.values = mc::sample_uniform(stream, 5000, -3.0, 7.0);
    const auto st = summary_stats(s);
    long double m = 0.0L;
    for (double v : s.values) m += v;
    m /= static_cast<long double>(s.values.size());
    long double varacc = 0.0L;
    for (double v : s.values) varacc += (v - m) * (v - m);
    varacc /= static_cast<long double>(s.values.size() - 1);
    CHECK(std::abs(st.mean - static_cast<double>(m)) <=
          1e-12 * std::max(1.0, std::abs(st.mean)));
    CHECK(std::abs(st.std - static_cast<double>(std::sqrt(varacc))) <= 1e-12 * st.std);
}

TEST_CASE("kurtosis of a large normal sample is near 3") {
    mc::RngStream stream(42, 1);
    ReturnSeries s;
    s.values = mc::sample_normal_box_muller(stream, 1000000);
    const auto st = summary_stats(s);
    CHECK(st.kurtosis == Catch::Approx(3.0).margin(0.05));
    CHECK(st.skewness == Catch::Approx(0.0).margin(0.02));
}

TEST_CASE("empirical_quantile follows the ceiling rule") {
    std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    CHECK(empirical_quantile(x, 0.5) == 5.0);
    CHECK(empirical_quantile(x, 1.0) == 10.0);
    CHECK(empirical_quantile(x, 0.95) == 10.0);
    CHECK_THROWS_AS(empirical_quantile(x, 0.0), Error);
    CHECK_THROWS_AS(empirical_quantile(x, 1.5), Error);
}

TEST_CASE("empirical_quantile is nondecreasing in p and hits the max") {
    mc::RngStream stream(3, 3);
    const auto x = mc::sample_normal_box_muller(stream, 500);
    double prev = -1e300;
    for (double p = 0.05; p <= 1.0; p += 0.05) {
        const double q = empirical_quantile(x, p);
        CHECK(q >= prev);
        prev = q;
    }
    CHECK(empirical_quantile(x, 1.0) == *std::max_element(x.begin(), x.end()));
}

TEST_CASE("rank correlations on exact monotone relations") {
    ReturnSeries x, y;
    x.values = {1.0, 2.0, 5.0, 3.5, -2.0};
    y.values.resize(x.values.size());
    for (std::size_t i = 0; i < x.values.size(); ++i) y.values[i] = 2.0 * x.values[i] + 3.0;
    auto r = rank_correlations(x, y);
    CHECK(r.pearson == Catch::Approx(1.0));
    CHECK(r.kendall == Catch::Approx(1.0));
    CHECK(r.spearman == Catch::Approx(1.0));

    for (std::size_t i = 0; i < x.values.size(); ++i) y.values[i] = -x.values[i];
    r = rank_correlations(x, y);
    CHECK(r.pearson == Catch::Approx(-1.0));
    CHECK(r.kendall == Catch::Approx(-1.0));
    CHECK(r.spearman == Catch::Approx(-1.0));
}

TEST_CASE("independent draws have small Kendall tau") {
    mc::RngStream stream(9, 0);
    ReturnSeries x, y;
    x.values = mc::sample_normal_box_muller(stream, 10000);
    y.values = mc::sample_normal_box_muller(stream, 10000);
    const auto r = rank_correlations(x, y);
    CHECK(std::abs(r.kendall) < 0.03);
}

TEST_CASE("rank statistics are invariant under increasing transforms") {
    mc::RngStream stream(17, 2);
    ReturnSeries x, y, xt;
    x.values = mc::sample_normal_box_muller(stream, 400);
    y.values.resize(x.values.size());
    for (std::size_t i = 0; i < x.values.size(); ++i)
        y.values[i] = 0.3 * x.values[i] + mc::normal_draw(stream);
    xt.values.resize(x.values.size());
    for (std::size_t i = 0; i < x.values.size(); ++i) xt.values[i] = std::exp(x.values[i]);

    const auto base = rank_correlations(x, y);
    const auto trans = rank_correlations(xt, y);
    CHECK(trans.kendall == Catch::Approx(base.kendall).margin(1e-12));
    CHECK(trans.spearman == Catch::Approx(base.spearman).margin(1e-12));
}

TEST_CASE("mean ranks handle ties") {
    // all-equal input: every rank is (n+1)/2
    const auto r = mean_ranks({7.0, 7.0, 7.0});
    CHECK(r[0] == Catch::Approx(2.0));
    CHECK(r[1] == Catch::Approx(2.0));
    CHECK(r[2] == Catch::Approx(2.0));
}

TEST_CASE("series validation catches bad inputs") {
    ReturnSeries s;
    CHECK_THROWS_AS(s.validate(), Error);
    s.values = {1.0, std::numeric_limits<double>::infinity()};
    CHECK_THROWS_AS(s.validate(), Error);
    s.values = {1.0, 2.0};
    s.timestamps = {"2020-01-02", "2020-01-01"};
    CHECK_THROWS_AS(s.validate(), Error);
}
