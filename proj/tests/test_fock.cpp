#include <doctest.h>

#include "rdmlab/fock.hpp"
#include "rdmlab/rng.hpp"

using namespace rdmlab;

TEST_CASE("basis ordering is particle-number-major with vacuum first") {
  const BasisPtr b = build_basis(4);
  CHECK(b->dim() == 16);
  CHECK(b->mask(0) == 0u);
  CHECK(b->particles(0) == 0);
  // Sectors are contiguous, ascending in N, bitmask-ascending within.
  int prev_n = 0;
  std::uint32_t prev_mask = 0;
  for (Eigen::Index i = 1; i < b->dim(); ++i) {
    const int ni = b->particles(i);
    CHECK(ni >= prev_n);
    if (ni == prev_n) CHECK(b->mask(i) > prev_mask);
    prev_n = ni;
    prev_mask = b->mask(i);
  }
  CHECK(b->sector_size(0) == 1);
  CHECK(b->sector_size(2) == 6);
  for (Eigen::Index i = 0; i < b->dim(); ++i)
    CHECK(b->index_of(b->mask(i)) == i);
}

TEST_CASE("creation sign follows the prepend convention") {
  const BasisPtr b = build_basis(3);
  // c*_1 on |{0}>: one occupied mode below 1 => sign -1.
  const SpMat c1 = creation(1, b).matrix;
  const Eigen::Index from = b->index_of(0b001u);
  const Eigen::Index to = b->index_of(0b011u);
  CHECK(Mat(c1)(to, from) == cd(-1.0, 0.0));
  // c*_2 on |{0,1}>: two occupied modes below 2 => sign +1.
  const SpMat c2 = creation(2, b).matrix;
  CHECK(Mat(c2)(b->index_of(0b111u), b->index_of(0b011u)) == cd(1.0, 0.0));
  // c*_0 on |{1,2}>: no occupied modes below 0 => sign +1.
  const SpMat c0 = creation(0, b).matrix;
  CHECK(Mat(c0)(b->index_of(0b111u), b->index_of(0b110u)) == cd(1.0, 0.0));
  // Creating an occupied mode annihilates the vector.
  CHECK(Mat(c1).col(b->index_of(0b011u)).norm() == 0.0);
}

TEST_CASE("canonical anticommutation relations hold exactly") {
  for (int n : {2, 3, 4, 5}) {
    const BasisPtr b = build_basis(n);
    SpMat id(b->dim(), b->dim());
    id.setIdentity();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const FockOperator ci = creation(i, b), cj = creation(j, b);
        const FockOperator ai = annihilation(i, b), aj = annihilation(j, b);
        CHECK(max_abs(anticommutator(ci, cj).matrix) == 0.0);
        CHECK(max_abs(anticommutator(ai, aj).matrix) == 0.0);
        const SpMat mixed = anticommutator(ai, cj).matrix;
        const double delta = (i == j) ? 1.0 : 0.0;
        CHECK(max_abs(SpMat(mixed - delta * id)) == 0.0);
      }
  }
}

TEST_CASE("adjoint pairs creation with annihilation") {
  const BasisPtr b = build_basis(4);
  for (int k = 0; k < 4; ++k) {
    const SpMat diff =
        creation(k, b).adjoint().matrix - annihilation(k, b).matrix;
    CHECK(max_abs(diff) == 0.0);
  }
}

TEST_CASE("number operator counts particles and matches its assembly") {
  const BasisPtr b = build_basis(5);
  const Mat nhat = number_operator(b).dense();
  for (Eigen::Index i = 0; i < b->dim(); ++i)
    CHECK(nhat(i, i) == cd(static_cast<double>(b->particles(i)), 0.0));
  SpMat acc(b->dim(), b->dim());
  for (int k = 0; k < 5; ++k)
    acc += SpMat(creation(k, b).matrix * annihilation(k, b).matrix);
  CHECK(max_abs(SpMat(acc - number_operator(b).matrix)) == 0.0);
}

TEST_CASE("creation_general is linear and annihilation_general antilinear") {
  const BasisPtr b = build_basis(4);
  Rng rng(11, "fock_general");
  Vec f(4), g(4);
  for (int k = 0; k < 4; ++k) {
    f[k] = rng.cnormal();
    g[k] = rng.cnormal();
  }
  const cd z(0.3, -0.7);
  Vec comb = f + z * g;
  const SpMat lin = creation_general(comb, b).matrix -
                    creation_general(f, b).matrix -
                    SpMat(z * creation_general(g, b).matrix);
  CHECK(max_abs(lin) < 1e-15);
  const SpMat alin = annihilation_general(comb, b).matrix -
                     annihilation_general(f, b).matrix -
                     SpMat(std::conj(z) * annihilation_general(g, b).matrix);
  CHECK(max_abs(alin) < 1e-15);
  // {c(f), c*(g)} = <f, g> 1.
  const FockOperator mixed = anticommutator(
      annihilation_general(f, b), creation_general(g, b));
  SpMat id(b->dim(), b->dim());
  id.setIdentity();
  CHECK(max_abs(SpMat(mixed.matrix - f.dot(g) * id)) < 1e-15);
}

TEST_CASE("corrupt-sign hook breaks the CAR detectably") {
  const BasisPtr b = build_basis(4);
  testhooks::corrupt_creation_sign = true;
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      worst = std::max(worst, max_abs(anticommutator(creation(i, b),
                                                     creation(j, b))
                                          .matrix));
    }
  testhooks::corrupt_creation_sign = false;
  CHECK(worst > 1.0);
}
