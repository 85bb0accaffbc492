#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "kgmatch/simd/kernels.hpp"
#include "kgmatch/util/error.hpp"
#include "kgmatch/util/random.hpp"
#include "kgmatch/util/text.hpp"

using namespace kgmatch;

namespace {

template <typename T>
std::vector<T> randomVector(Rng& rng, std::size_t n) {
  std::vector<T> v(n);
  for (T& x : v) x = static_cast<T>(rng.uniform(-2.0, 2.0));
  return v;
}

// Plain loops, independent of the kernel tables.
double referenceDot(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(s);
}

}  // namespace

TEST_CASE("scalar kernels agree with plain loops") {
  Rng rng(7);
  const auto& k = simd::kernelsFor(simd::Isa::kScalar);
  for (std::size_t n = 0; n < 70; ++n) {
    const auto a = randomVector<double>(rng, n);
    const auto b = randomVector<double>(rng, n);
    CHECK(k.dot_f64(a.data(), b.data(), n) == doctest::Approx(referenceDot(a, b)).epsilon(1e-12));
    double sq = 0;
    for (std::size_t i = 0; i < n; ++i) sq += (a[i] - b[i]) * (a[i] - b[i]);
    CHECK(k.squared_distance_f64(a.data(), b.data(), n) == doctest::Approx(sq).epsilon(1e-12));
  }
}

TEST_CASE("every supported instruction set matches the scalar reference") {
  for (auto isa : {simd::Isa::kScalar, simd::Isa::kAvx2}) {
    if (!simd::isaSupported(isa)) continue;
    CAPTURE(simd::isaName(isa));
    const auto& ref = simd::kernelsFor(simd::Isa::kScalar);
    const auto& k = simd::kernelsFor(isa);
    CHECK(k.isa == isa);
    Rng rng(11);
    for (std::size_t n = 0; n < 131; ++n) {
      const auto af = randomVector<float>(rng, n);
      const auto bf = randomVector<float>(rng, n);
      const float ref_f = ref.dot_f32(af.data(), bf.data(), n);
      CHECK(std::fabs(k.dot_f32(af.data(), bf.data(), n) - ref_f) <= 1e-4f * (1.0f + std::fabs(ref_f)));

      const auto ad = randomVector<double>(rng, n);
      const auto bd = randomVector<double>(rng, n);
      const double ref_d = ref.dot_f64(ad.data(), bd.data(), n);
      CHECK(std::fabs(k.dot_f64(ad.data(), bd.data(), n) - ref_d) <= 1e-12 * (1.0 + std::fabs(ref_d)));
      CHECK(k.squared_distance_f64(ad.data(), bd.data(), n) ==
            doctest::Approx(ref.squared_distance_f64(ad.data(), bd.data(), n)).epsilon(1e-12));

      auto yf_ref = bf;
      auto yf = bf;
      ref.axpy_f32(0.37f, af.data(), yf_ref.data(), n);
      k.axpy_f32(0.37f, af.data(), yf.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(yf[i] == doctest::Approx(yf_ref[i]).epsilon(1e-6));

      auto yd_ref = bd;
      auto yd = bd;
      ref.axpy_f64(-1.25, ad.data(), yd_ref.data(), n);
      k.axpy_f64(-1.25, ad.data(), yd.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(yd[i] == doctest::Approx(yd_ref[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("unsupported instruction sets are rejected") {
  if (!simd::isaSupported(simd::Isa::kAvx2)) {
    CHECK_THROWS(simd::kernelsFor(simd::Isa::kAvx2));
  }
  CHECK(simd::isaSupported(simd::Isa::kScalar));
}

TEST_CASE("rng is reproducible and bounded") {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng r(3);
  std::vector<int> histogram(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto x = r.below(7);
    REQUIRE(x < 7);
    ++histogram[x];
  }
  for (int h : histogram) CHECK(std::abs(h - 10000) < 500);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(r.below(0) == 0);
  CHECK(r.below(1) == 0);
  CHECK(mixSeed(1, 2) != mixSeed(2, 1));
  CHECK(mixSeed(5, 9) == mixSeed(5, 9));
}

TEST_CASE("shuffle is a permutation") {
  Rng r(9);
  std::vector<int> v(50);
  for (int i = 0; i < 50; ++i) v[i] = i;
  r.shuffle(v);
  auto sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) CHECK(sorted[i] == i);
}

TEST_CASE("decimal formatting and parsing") {
  CHECK(formatDecimal(1.0) == "1");
  CHECK(formatDecimal(0.5) == "0.5");
  CHECK(formatDecimal(1.0 / 3.0) == "0.3333333333");
  CHECK(parseDecimal(" 0.25 ") == 0.25);
  CHECK(parseDecimal("1e-3") == 0.001);
  CHECK_THROWS_AS(parseDecimal("0.5x"), Error);
  CHECK_THROWS_AS(parseDecimal(""), Error);
}

TEST_CASE("csv quoting follows RFC 4180") {
  CHECK(csvField("plain") == "plain");
  CHECK(csvField("a,b") == "\"a,b\"");
  CHECK(csvField("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csvField("two\nlines") == "\"two\nlines\"");
  std::ostringstream out;
  writeCsvRow(out, {"a", "b,c", ""});
  CHECK(out.str() == "a,\"b,c\",\r\n");
  CHECK(trim("  x y \t") == "x y");
}
