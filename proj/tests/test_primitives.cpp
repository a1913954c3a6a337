#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "okse/errors.hpp"
#include "okse/hash.hpp"
#include "okse/linalg.hpp"
#include "okse/rng.hpp"

using namespace okse;

TEST_CASE("crc32 check value") {
  CHECK(crc32("123456789", 9) == 0xCBF43926u);
  CHECK(crc32("", 0) == 0x00000000u);
}

TEST_CASE("sha256 known vectors") {
  CHECK(digest_to_hex(sha256("", 0)) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(digest_to_hex(sha256("abc", 3)) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  // 56-byte message exercises the two-block padding path.
  const char* msg = "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq";
  CHECK(digest_to_hex(sha256(msg, 56)) ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("chacha20 keystream matches openssl reference") {
  // Key 00..1f, zero nonce, counter starting at 0; first 64 bytes were
  // generated with `openssl enc -chacha20`.
  const unsigned char expected[64] = {
      0x39, 0xfd, 0x2b, 0x7d, 0xd9, 0xc5, 0x19, 0x6a, 0x8d, 0xbd, 0x03, 0x77, 0xb8,
      0xdc, 0x4a, 0x49, 0x8a, 0x35, 0xd8, 0x6f, 0xbc, 0xde, 0x6a, 0xcc, 0xb2, 0xcc,
      0x7d, 0x4c, 0xd8, 0xea, 0x24, 0x92, 0x2b, 0x23, 0xcc, 0xe7, 0xa2, 0x60, 0x23,
      0xab, 0x3f, 0x0e, 0xef, 0x69, 0x3a, 0xc8, 0x7f, 0x64, 0x25, 0x82, 0x35, 0xea,
      0xb1, 0xf7, 0xa3, 0x2d, 0xc2, 0x27, 0x62, 0xa0, 0x48, 0x5b, 0x41, 0x0c};
  Seed key{};
  for (int i = 0; i < 32; ++i) {
    key[i] = static_cast<std::uint8_t>(i);
  }
  ChaChaRng rng(key);
  for (int i = 0; i < 16; ++i) {
    std::uint32_t word = rng.next_u32();
    for (int b = 0; b < 4; ++b) {
      CHECK(static_cast<unsigned char>(word >> (8 * b)) == expected[4 * i + b]);
    }
  }
}

TEST_CASE("seed hex parsing left-pads") {
  Seed s = seed_from_hex("01");
  CHECK(s[31] == 1);
  for (int i = 0; i < 31; ++i) {
    CHECK(s[i] == 0);
  }
  CHECK(seed_to_hex(s) == std::string(62, '0') + "01");

  Seed full = seed_from_hex(std::string(64, 'f'));
  CHECK(full[0] == 0xFF);
  CHECK(full[31] == 0xFF);

  CHECK(seed_from_hex("aB") == seed_from_hex("ab"));

  CHECK_THROWS_AS(seed_from_hex(""), InvalidParameterError);
  CHECK_THROWS_AS(seed_from_hex(std::string(65, '0')), InvalidParameterError);
  CHECK_THROWS_AS(seed_from_hex("0g"), InvalidParameterError);
}

TEST_CASE("derive_seed separates labeled streams") {
  Seed base = seed_from_hex("42");
  Seed a = derive_seed(base, "alpha");
  Seed b = derive_seed(base, "beta");
  CHECK(a != b);
  CHECK(a != base);
  CHECK(derive_seed(base, "alpha") == a);
  CHECK(derive_seed(base, "alpha", 1) != a);
}

TEST_CASE("uniform and gaussian sampling moments") {
  ChaChaRng rng(seed_from_hex("07"));
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double g = rng.next_gaussian();
    sum += g;
    sum2 += g * g;
  }
  double mean = sum / n;
  double var = sum2 / n - mean * mean;
  CHECK(std::fabs(mean) < 0.02);
  CHECK(std::fabs(var - 1.0) < 0.03);

  for (int i = 0; i < 1000; ++i) {
    double u = rng.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(rng.next_below(7) < 7);
  }
}

TEST_CASE("qr_orthonormal yields orthonormal factors") {
  ChaChaRng rng(seed_from_hex("11"));
  for (std::size_t dim : {1u, 2u, 5u, 8u, 16u}) {
    Matrix g(dim, dim);
    for (double& v : g.data) {
      v = rng.next_gaussian();
    }
    Matrix q = qr_orthonormal(g);
    CHECK(orthogonality_defect(q) < 1e-12);
    CHECK(std::fabs(std::fabs(lu_determinant(q)) - 1.0) < 1e-10);
  }
}

TEST_CASE("qr_orthonormal on 1x1 gives a sign") {
  Matrix g(1, 1);
  g.at(0, 0) = -2.5;
  Matrix q = qr_orthonormal(g);
  CHECK(std::fabs(std::fabs(q.at(0, 0)) - 1.0) < 1e-15);
}

TEST_CASE("lu_determinant on known matrices") {
  Matrix a(2, 2);
  a.at(0, 0) = 3.0;
  a.at(0, 1) = 1.0;
  a.at(1, 0) = 2.0;
  a.at(1, 1) = 4.0;
  CHECK(lu_determinant(a) == doctest::Approx(10.0));

  Matrix singular(2, 2);
  singular.at(0, 0) = 1.0;
  singular.at(0, 1) = 2.0;
  singular.at(1, 0) = 2.0;
  singular.at(1, 1) = 4.0;
  CHECK(lu_determinant(singular) == doctest::Approx(0.0));

  CHECK(lu_determinant(Matrix::identity(5)) == doctest::Approx(1.0));
}

TEST_CASE("vector-matrix products agree with the definition") {
  Matrix k(2, 2);
  k.at(0, 0) = 1.0;
  k.at(0, 1) = 2.0;
  k.at(1, 0) = 3.0;
  k.at(1, 1) = 4.0;
  std::vector<double> x = {5.0, 7.0};

  auto xk = row_times(x, k);  // [5+21, 10+28]
  CHECK(xk[0] == doctest::Approx(26.0));
  CHECK(xk[1] == doctest::Approx(38.0));

  auto xkt = row_times_transpose(x, k);  // [5+14, 15+28]
  CHECK(xkt[0] == doctest::Approx(19.0));
  CHECK(xkt[1] == doctest::Approx(43.0));

  auto kte = transpose_times_col(k, x);  // K^T x = [5+21, 10+28]
  CHECK(kte[0] == doctest::Approx(26.0));
  CHECK(kte[1] == doctest::Approx(38.0));

  CHECK_THROWS_AS(row_times({1.0}, k), InvalidParameterError);
}
