#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "rdep/dataset.hpp"
#include "rdep/errors.hpp"

using namespace rdep;

namespace {

struct TempCsv {
    std::string path;
    explicit TempCsv(const std::string& content) {
        static int counter = 0;
        path = "rdep_test_" + std::to_string(counter++) + ".csv";
        std::ofstream out(path);
        out << content;
    }
    ~TempCsv() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("csv loading") {
    TempCsv file("a,b,y\n1,2,p\n3,4,q\n5,6,p\n");
    Dataset d = load_csv(file.path, "y");
    CHECK(d.rows() == 3);
    CHECK(d.cols() == 2);
    CHECK(d.x.at(1, 1) == doctest::Approx(4.0));
    CHECK(d.labels[2] == "p");
    CHECK(d.feature_names == std::vector<std::string>{"a", "b"});

    TempCsv missing("a,b,y\n1,?,p\n3,4,q\n");
    Dataset dm = load_csv(missing.path, "y", "?");
    CHECK(std::isnan(dm.x.at(0, 1)));
    CHECK_FALSE(std::isnan(dm.x.at(1, 1)));

    CHECK_THROWS_AS(load_csv(file.path, "nope"), LoadError);
    CHECK_THROWS_AS(load_csv("does_not_exist.csv", "y"), LoadError);

    TempCsv bad("a,y\nfoo,p\n");
    CHECK_THROWS_AS(load_csv(bad.path, "y"), LoadError);

    TempCsv ragged("a,b,y\n1,2,p\n3,4\n");
    CHECK_THROWS_AS(load_csv(ragged.path, "y"), LoadError);
}

TEST_CASE("mean imputation") {
    TempCsv file("a,y\n1,p\n?,q\n3,p\n");
    Dataset d = load_csv(file.path, "y", "?");
    Dataset filled = impute_mean(d);
    CHECK(filled.x.at(1, 0) == doctest::Approx(2.0));

    Dataset same = impute_mean(filled);
    for (std::size_t i = 0; i < same.rows(); ++i)
        CHECK(same.x.at(i, 0) == filled.x.at(i, 0));

    TempCsv single("a,y\n5,p\n?,q\n?,p\n");
    Dataset s = impute_mean(load_csv(single.path, "y", "?"));
    for (std::size_t i = 0; i < 3; ++i) CHECK(s.x.at(i, 0) == doctest::Approx(5.0));

    TempCsv empty_col("a,y\n?,p\n?,q\n");
    CHECK_THROWS_AS(impute_mean(load_csv(empty_col.path, "y", "?")), LoadError);
}

TEST_CASE("standardizer uses population statistics and a degenerate fallback") {
    Matrix train(0, 2);
    train.push_row(std::vector<double>{0.0, 7.0});
    train.push_row(std::vector<double>{2.0, 7.0});
    Standardizer s = fit_standardizer(train);
    CHECK(s.mean[0] == doctest::Approx(1.0));
    CHECK(s.stddev[0] == doctest::Approx(1.0));  // population std of {0,2}
    CHECK(s.stddev[1] == doctest::Approx(1.0));  // constant column fallback

    Matrix z = apply_standardizer(s, train);
    CHECK(z.at(0, 0) == doctest::Approx(-1.0));
    CHECK(z.at(1, 0) == doctest::Approx(1.0));
    CHECK(z.at(0, 1) == doctest::Approx(0.0));

    std::vector<double> at_mean{1.0, 7.0};
    auto t = apply_standardizer(s, at_mean);
    CHECK(t[0] == doctest::Approx(0.0));
    CHECK(t[1] == doctest::Approx(0.0));
}

TEST_CASE("standardized training columns have zero mean and unit spread") {
    Matrix train(0, 3);
    for (int i = 0; i < 20; ++i)
        train.push_row(std::vector<double>{0.5 * i, -3.0 + i * i * 0.1, 4.0});
    Standardizer s = fit_standardizer(train);
    Matrix z = apply_standardizer(s, train);
    for (std::size_t j = 0; j < 2; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < z.rows; ++i) mean += z.at(i, j);
        mean /= static_cast<double>(z.rows);
        CHECK(std::abs(mean) < 1e-10);
        double var = 0.0;
        for (std::size_t i = 0; i < z.rows; ++i) var += z.at(i, j) * z.at(i, j);
        var /= static_cast<double>(z.rows);
        CHECK(var == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("moon generator geometry, split and determinism") {
    Dataset clean = make_moons(4, 0.0, 1);
    REQUIRE(clean.rows() == 4);
    for (std::size_t i = 0; i < clean.rows(); ++i) {
        double x = clean.x.at(i, 0), y = clean.x.at(i, 1);
        if (clean.labels[i] == "1") {
            CHECK(x * x + y * y == doctest::Approx(1.0));
        } else {
            CHECK((x - 1.0) * (x - 1.0) + (y - 0.5) * (y - 0.5) ==
                  doctest::Approx(1.0));
        }
    }

    Dataset noisy = make_moons(1000, 0.1, 7);
    std::size_t pos = 0;
    for (const auto& l : noisy.labels) pos += l == "1";
    CHECK(pos == 500);
    CHECK(noisy.rows() - pos == 500);

    Dataset again = make_moons(1000, 0.1, 7);
    CHECK(noisy.x.data == again.x.data);
    CHECK(noisy.labels == again.labels);

    Dataset other = make_moons(1000, 0.1, 8);
    CHECK(noisy.x.data != other.x.data);

    CHECK_THROWS_AS(make_moons(1, 0.1, 1), std::invalid_argument);
}

TEST_CASE("stratified folds partition the rows with proportional classes") {
    std::vector<std::string> labels;
    for (int i = 0; i < 10; ++i) labels.push_back("a");
    for (int i = 0; i < 10; ++i) labels.push_back("b");
    auto folds = stratified_kfold(labels, 10, 3);
    REQUIRE(folds.size() == 10);
    std::set<std::size_t> seen;
    for (const auto& f : folds) {
        CHECK(f.test.size() == 2);
        std::size_t a = 0;
        for (auto i : f.test) {
            CHECK(!seen.count(i));
            seen.insert(i);
            a += labels[i] == "a";
        }
        CHECK(a == 1);  // one of each class per fold
        CHECK(f.train.size() == 18);
    }
    CHECK(seen.size() == 20);

    std::vector<std::string> skew;
    for (int i = 0; i < 21; ++i) skew.push_back("p");
    for (int i = 0; i < 9; ++i) skew.push_back("n");
    auto f3 = stratified_kfold(skew, 3, 5);
    for (const auto& f : f3) {
        std::size_t p = 0;
        for (auto i : f.test) p += skew[i] == "p";
        CHECK(p == 7);
        CHECK(f.test.size() - p == 3);
    }

    std::vector<std::string> tiny{"a", "a", "b"};
    CHECK_THROWS_AS(stratified_kfold(tiny, 2, 1), std::invalid_argument);

    auto r1 = stratified_kfold(labels, 5, 11);
    auto r2 = stratified_kfold(labels, 5, 11);
    for (std::size_t f = 0; f < 5; ++f) {
        CHECK(r1[f].test == r2[f].test);
        CHECK(r1[f].train == r2[f].train);
    }
}
