#include <doctest.h>

#include <cmath>

#include "mourre/classes.hpp"

using namespace mourre;

namespace {

Verdict S_of(const MatrixSequence& W, Annulus an = {}, long H = 1000000) { return class_S(W, an, H).verdict; }
Verdict M_of(const MatrixSequence& W, int k, Annulus an = {}, long H = 1000000) { return class_M(W, k, an, H).verdict; }

std::vector<MatrixSequence> bundled()
{
    return {kopylova_sequence(),
            power_sequence(2.0),
            power_sequence(0.5),
            inverse_linear_sequence(),
            oscillating_sequence(1.5),
            make_longrange_example({0, 2.0}, RateMode::S_rate),
            make_longrange_example({1, 2.0}, RateMode::S_rate),
            make_longrange_example({0, 2.0}, RateMode::Mk_rate, 1),
            constant_sequence(Mat2::identity(0.7))};
}

}  // namespace

TEST_CASE("q0 of simple sequences")
{
    CHECK(q0_sequence(constant_sequence(Mat2::identity(3.0)), 5) == 0.0);
    auto jb = [](double x) { return 1.0 / std::sqrt(1.0 + x * x); };
    MatrixSequence d{[&](long n) { return Mat2::identity(jb(double(n))); }, std::nullopt, "d"};
    for (long n : {-3L, 0L, 4L, 100L}) CHECK(q0_sequence(d, n) == doctest::Approx(std::abs(jb(n - 1.0) - jb(double(n)))));
    MatrixSequence off = constant_sequence(Mat2(0, 1, 1, 0));
    for (long n = -5; n <= 5; ++n) CHECK(q0_sequence(off, n) >= 1.0);
    // unilateral convention: zero shifted in at n = 0
    CHECK(q0_sequence(constant_sequence(Mat2::identity(2.0)), 0, true) == doctest::Approx(2.0));
}

TEST_CASE("Q seminorms")
{
    CHECK(q_seminorm(constant_sequence(Mat2(1, 2, 3, 4)), 1, 1, 1000).sup_value == 0.0);
    SeminormResult k = q_seminorm(kopylova_sequence(), 1, 1, 100000);
    CHECK(k.sup_value < 1.5);
    CHECK(k.tail_trend == 0.0);
    SeminormResult h = q_seminorm(power_sequence(0.5), 1, 1, 100000);
    CHECK(std::isfinite(h.sup_value));
    CHECK(h.tail_trend < 1e-3);
    CHECK_THROWS(q_seminorm(kopylova_sequence(), 1, 3, 1000));
    CHECK_THROWS(q_seminorm(kopylova_sequence(), 20, 1, 100));
}

TEST_CASE("Kopylova comparison sequence: Q_{1,2} member with only logarithmic decay")
{
    ClassVerdict q = class_Q(kopylova_sequence(), 1, 2, 100000);
    CHECK(q.verdict == Verdict::Member);
    double rho = decay_rate_estimate(kopylova_sequence(), 100000);
    CHECK(rho < 0.2);
    CHECK(rho >= 0.0);
}

TEST_CASE("oscillating sequence with slow decay is not in Q_{1,1}")
{
    CHECK(class_Q(oscillating_sequence(0.1), 1, 1, 1000000).verdict == Verdict::Nonmember);
}

TEST_CASE("class S fixtures")
{
    CHECK(S_of(make_longrange_example({0, 2.0}, RateMode::S_rate), {}, 10000000) == Verdict::Member);
    CHECK(S_of(make_longrange_example({0, 0.5}, RateMode::S_rate), {}, 10000000) != Verdict::Member);
    ClassVerdict il = class_S(inverse_linear_sequence(), {}, 1000000);
    CHECK(il.verdict == Verdict::Nonmember);
    // logarithmic divergence: the partial integral gains about ln(10) per decade
    CHECK(il.get("last_decade_increment") == doctest::Approx(std::log(10.0)).epsilon(0.05));
    CHECK(S_of(power_sequence(2.0)) == Verdict::Member);
    CHECK(class_S(constant_sequence(Mat2{}), {}, 10000).verdict == Verdict::Member);
    CHECK_THROWS_AS(class_S(kopylova_sequence(), {2.0, 1.0}, 10000), Error);
}

TEST_CASE("class M fixtures")
{
    CHECK(M_of(make_longrange_example({0, 2.0}, RateMode::Mk_rate, 1), 1, {}, 10000000) == Verdict::Member);
    CHECK(M_of(kopylova_sequence(), 1) == Verdict::Member);
    CHECK(M_of(constant_sequence(Mat2(1, 2, 2, 1)), 1) == Verdict::Member);
    try {
        class_M(kopylova_sequence(), 1, {1.0, 1.0}, 10000);
        FAIL("expected BadAnnulus");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadAnnulus);
    }
}

TEST_CASE("verdicts do not depend on the annulus")
{
    for (const auto& W : bundled()) {
        CAPTURE(W.label);
        CHECK(S_of(W) == S_of(W, {0.5, 3.0}));
        CHECK(M_of(W, 1) == M_of(W, 1, {0.5, 3.0}));
    }
}

TEST_CASE("verdicts are invariant under scaling")
{
    for (const auto& W : bundled()) {
        CAPTURE(W.label);
        for (double c : {-3.0, 0.01, 250.0}) {
            MatrixSequence V = scaled_sequence(W, c);
            CHECK(S_of(W) == S_of(V));
            CHECK(M_of(W, 1) == M_of(V, 1));
            CHECK(class_Q(W, 1, 2, 100000).verdict == class_Q(V, 1, 2, 100000).verdict);
        }
    }
}

TEST_CASE("S members have bounded n|W(n)| and summable norms")
{
    for (const auto& W : bundled()) {
        if (S_of(W) != Verdict::Member) continue;
        CAPTURE(W.label);
        AppendixReport r = appendix_sanity([&](long n) { return W(n).norm(); }, {}, 1000000);
        CHECK(r.applicable);
        CHECK(r.passed);
    }
    AppendixReport r = appendix_sanity([](long n) { return 1.0 / (double(n) * n); }, {}, 1000000);
    CHECK(r.passed);
    CHECK(r.sup_n_a == doctest::Approx(1.0));
    r = appendix_sanity([](long n) { return 1.0 / (n * std::pow(std::log(n + 2.0), 2)); }, {}, 1000000);
    CHECK(r.passed);
    r = appendix_sanity([](long n) { return 1.0 / double(n); }, {}, 1000000);
    CHECK_FALSE(r.applicable);
}

TEST_CASE("M_0 members are M_1 members")
{
    for (const auto& W : bundled()) {
        CAPTURE(W.label);
        if (M_of(W, 0) == Verdict::Member) CHECK(M_of(W, 1) == Verdict::Member);
    }
}

TEST_CASE("omega weights")
{
    CHECK(omega_weight({0, 1.0}, 0.0) == doctest::Approx(std::log(1.0 + 1.0)));
    double X = std::sqrt(1.0 + 9.0);
    CHECK(omega_weight({0, 2.0}, 3.0) == doctest::Approx(std::pow(std::log1p(X), 2)));
    double l1 = std::log1p(X), l2 = std::log1p(l1);
    CHECK(omega_weight({1, 1.5}, 3.0) == doctest::Approx(std::pow(l2, 1.5) * l1));
    CHECK(omega_weight({3, -1.0}, 1e6) > 0.0);
}

TEST_CASE("Mk_rate sequences have the prescribed k-difference")
{
    WeightSpec ws{0, 2.0};
    for (int k : {1, 2, 3}) {
        MatrixSequence W = make_longrange_example(ws, RateMode::Mk_rate, k);
        for (long n : {3L, 7L, 1000L, -50L}) {
            double x = std::abs(double(n));
            double rate = 1.0 / (std::sqrt(1.0 + x * x) * omega_weight(ws, x));
            long m = std::abs(n);
            CHECK((W(m) - W(m - k)).norm() == doctest::Approx(rate));
            CHECK(W(n).norm() == W(-n).norm());
        }
    }
}

TEST_CASE("l1 difference test")
{
    ClassVerdict c = l1_difference_test(constant_sequence(Mat2::identity(2)), 1, 0, 0, 100000);
    CHECK(c.verdict == Verdict::Member);
    CHECK(l1_difference_test(power_sequence(2.0), 1, 0, 0, 1000000).verdict == Verdict::Member);
    CHECK(l1_difference_test(power_sequence(2.0), 3, 1, 1, 1000000).verdict == Verdict::Member);
    CHECK(c.get("v0_12_never_minus_one") == 1.0);
    CHECK(l1_difference_test(constant_sequence(Mat2(0, -1, -1, 0)), 1, 0, 0, 10000).get("v0_12_never_minus_one") == 0.0);
}

TEST_CASE("decay rate")
{
    CHECK(decay_rate_estimate(power_sequence(2.0), 100000) == doctest::Approx(2.0).epsilon(0.02));
    CHECK(decay_rate_estimate(power_sequence(1.3), 100000) == doctest::Approx(1.3).epsilon(0.02));
    try {
        decay_rate_estimate(constant_sequence(Mat2{}), 10000);
        FAIL("expected AllZero");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::AllZero);
    }
}

TEST_CASE("support hints bound the horizon")
{
    MatrixSequence W = power_sequence(2.0);
    W.support_hint = std::make_pair(0L, 5000L);
    CHECK_THROWS_AS(class_S(W, {}, 100000), Error);
    CHECK_NOTHROW(class_S(W, {}, 5000));
}

TEST_CASE("partial-sum decision rule")
{
    // converged: last decade adds almost nothing
    CHECK(decide_partial_sums({1, 2, 2.5, 2.6, 2.6001}, 10000).verdict == Verdict::Member);
    // harmonic-type increments c/d
    std::vector<double> h{0};
    for (int d = 1; d <= 6; ++d) h.push_back(h.back() + 1.0 / d);
    CHECK(decide_partial_sums(h, 1000000).verdict == Verdict::Nonmember);
    // fast decaying increments c/d^3
    std::vector<double> f{0};
    for (int d = 1; d <= 6; ++d) f.push_back(f.back() + 1.0 / (d * d * d));
    ClassVerdict cv = decide_partial_sums(f, 1000000);
    CHECK(cv.verdict == Verdict::Member);
    CHECK(cv.get("decay_exponent") == doctest::Approx(3.0).epsilon(1e-9));
    // increments d^{-1.5}: undecided
    std::vector<double> m{0};
    for (int d = 1; d <= 6; ++d) m.push_back(m.back() + std::pow(d, -1.5));
    CHECK(decide_partial_sums(m, 1000000).verdict == Verdict::Inconclusive);
}
