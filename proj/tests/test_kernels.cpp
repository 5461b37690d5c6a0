#include <cmath>
#include <vector>

#include "actp/kernels.hpp"
#include "actp/rng.hpp"
#include "doctest.h"

using namespace actp;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n, double lo = -2.0, double hi = 2.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = lo + (hi - lo) * rng.next_double();
    return v;
}

}  // namespace

TEST_CASE("scalar kernels basics") {
    const auto& k = kernels::detail::scalar_ops;
    std::vector<double> a{1.0, 2.0, 3.0}, b{4.0, -1.0, 0.5};
    CHECK(k.dot(a.data(), b.data(), 3) == doctest::Approx(3.5));
    CHECK(k.sum(a.data(), 3) == doctest::Approx(6.0));

    std::vector<double> y{1.0, 1.0, 1.0};
    k.axpy(y.data(), 2.0, a.data(), 3);
    CHECK(y[2] == doctest::Approx(7.0));

    std::vector<double> out(3);
    k.mul(out.data(), a.data(), b.data(), 3);
    CHECK(out[1] == doctest::Approx(-2.0));

    // 2x3 matrix times vector
    std::vector<double> m{1, 0, 1, 0, 2, 0};
    std::vector<double> mv(2);
    k.matvec(mv.data(), m.data(), 2, 3, a.data());
    CHECK(mv[0] == doctest::Approx(4.0));
    CHECK(mv[1] == doctest::Approx(4.0));
}

TEST_CASE("argmax_dot takes the first row on ties") {
    const auto& k = kernels::detail::scalar_ops;
    std::vector<double> mat{1.0, 0.0, 0.0, 1.0, 0.5, 0.5};
    std::vector<double> w{0.5, 0.5};
    const auto r = k.argmax_dot(mat.data(), 3, 2, w.data());
    CHECK(r.index == 0);
    CHECK(r.value == doctest::Approx(0.5));
}

TEST_CASE("avx2 variants match scalar within tolerance") {
    if (!kernels::avx2_compiled() || !kernels::avx2_supported()) return;
    const auto& s = kernels::detail::scalar_ops;
    const auto& v = kernels::detail::avx2_ops;
    Rng rng(42);
    for (std::size_t n : {1u, 3u, 4u, 7u, 8u, 13u, 64u, 200u, 1031u}) {
        const auto a = random_vec(rng, n);
        const auto b = random_vec(rng, n);
        const double scale = std::max(1.0, std::abs(s.dot(a.data(), b.data(), n)));
        CHECK(std::abs(s.dot(a.data(), b.data(), n) - v.dot(a.data(), b.data(), n)) / scale <
              1e-13);
        CHECK(std::abs(s.sum(a.data(), n) - v.sum(a.data(), n)) <= 1e-12 * n);

        auto y1 = random_vec(rng, n);
        auto y2 = y1;
        s.axpy(y1.data(), 0.37, a.data(), n);
        v.axpy(y2.data(), 0.37, a.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]));

        std::vector<double> o1(n), o2(n);
        s.mul(o1.data(), a.data(), b.data(), n);
        v.mul(o2.data(), a.data(), b.data(), n);
        CHECK(o1 == o2);  // products are exact

        const std::size_t rows = 5;
        const auto m = random_vec(rng, rows * n);
        std::vector<double> mv1(rows), mv2(rows);
        s.matvec(mv1.data(), m.data(), rows, n, a.data());
        v.matvec(mv2.data(), m.data(), rows, n, a.data());
        for (std::size_t r = 0; r < rows; ++r) CHECK(mv1[r] == doctest::Approx(mv2[r]));

        const auto r1 = s.argmax_dot(m.data(), rows, n, a.data());
        const auto r2 = v.argmax_dot(m.data(), rows, n, a.data());
        CHECK(r1.value == doctest::Approx(r2.value));
    }
}

TEST_CASE("rng is deterministic and well ranged") {
    Rng a(7), b(7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng c(9);
    for (int i = 0; i < 1000; ++i) {
        const double u = c.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(c.next_below(7) < 7);
    }
    std::vector<double> w{0.0, 0.3, 0.7};
    int counts[3] = {0, 0, 0};
    for (int i = 0; i < 20000; ++i) counts[c.sample_discrete(w)]++;
    CHECK(counts[0] == 0);
    CHECK(counts[1] > 5000);
    CHECK(counts[2] > 12000);
}
