#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "test_support.hpp"

using namespace p1split;
using namespace p1split::testing;

namespace {

// [[0, T^2], [1, T]]
template <class F>
LaurentMatrix<F> twisted(const FieldSpec& field) {
  LaurentMatrix<F> m(2, 2);
  m << Laurent<F>(), mono<F>(field, 1, 2), mono<F>(field, 1, 0), mono<F>(field, 1, 1);
  return m;
}

template <class F>
LaurentMatrix<F> diag_lattice(const FieldSpec& field, std::vector<int> exps) {
  LaurentMatrix<F> m = monomial_diagonal<F>(exps);
  for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, i) *= make_scalar<F>(1, field);
  return m;
}

template <class F>
PolyMatrix<F> poly_matrix(const FieldSpec& field, Eigen::Index d, std::initializer_list<std::initializer_list<long>> entries) {
  PolyMatrix<F> m(d, d);
  Eigen::Index k = 0;
  for (const auto& e : entries) {
    m(k / d, k % d) = Poly<F>(scalars<F>(field, e));
    ++k;
  }
  return m;
}

template <class F>
void check_smb_properties(const Lattice<F>& lattice, Rng& rng, int combinations) {
  const FieldSpec& field = lattice.field();
  const auto s = smb(lattice);
  const Eigen::Index d = lattice.dim();
  const auto& w = lattice.weights();
  REQUIRE(check_smb(lattice, s).all());
  CHECK(s.iterations <= s.iteration_bound);

  // gauge of a K-combination is the minimum of the termwise gauges
  const RatFunMatrix<F> omegas = to_ratfun(s.omegas);
  for (int t = 0; t < combinations; ++t) {
    Vector<RatFun<F>> lambda(d);
    for (Eigen::Index j = 0; j < d; ++j) lambda(j) = random_ratfun<F>(rng, field, 3);
    Valuation expected = Valuation::infinity();
    for (Eigen::Index j = 0; j < d; ++j) expected = min(expected, val_inf(lambda(j)) + Valuation(s.gauges[j]));
    CHECK(ratfun_gauge<F>(omegas * lambda, w) == expected);
  }

  // each basis vector realizes its distance to the span of the previous ones
  for (Eigen::Index k = 0; k < d; ++k) {
    const LaurentVector<F> omega = s.omegas.col(k);
    CHECK(distance_to_span(omega, s, k) == Valuation(s.gauges[k]));
  }
  CHECK(distance_to_span(LaurentVector<F>(s.omegas.col(0)), s, d).is_infinite());

  // distance to U_i is attained by the solved projection and never beaten
  const auto v = random_vector<F>(rng, field, d, -3, 3);
  const auto coords = smb_coordinates(v, s);
  for (Eigen::Index i = 0; i <= d; ++i) {
    const Valuation dist = distance_to_span(v, s, i);
    Vector<RatFun<F>> proj = Vector<RatFun<F>>::Zero(d);
    for (Eigen::Index j = 0; j < i; ++j) proj(j) = coords(j);
    const Vector<RatFun<F>> residual = vector_as_ratfun(v).col(0) - omegas * proj;
    CHECK(ratfun_gauge<F>(residual, w) == dist);
    Vector<RatFun<F>> other = proj;
    for (Eigen::Index j = 0; j < i; ++j) other(j) += random_ratfun<F>(rng, field, 2);
    CHECK(ratfun_gauge<F>(Vector<RatFun<F>>(vector_as_ratfun(v).col(0) - omegas * other), w) <= dist);
  }
  CHECK(distance_to_span(v, s, 0) == vector_gauge(v, w));

  // lattice vectors in U_i have polynomial coordinates, none shorter than omega_1
  for (Eigen::Index i = 1; i <= d; ++i) {
    Vector<Poly<F>> c = Vector<Poly<F>>::Zero(d);
    for (Eigen::Index j = 0; j < i; ++j) c(j) = random_poly<F>(rng, field, 2);
    const PolyMatrix<F> a = s.U * c;
    const LaurentVector<F> member = lattice.basis() * to_laurent(PolyMatrix<F>(a));
    const auto lambda = smb_coordinates(member, s);
    for (Eigen::Index j = 0; j < d; ++j) {
      CHECK(lambda(j).is_polynomial());
      if (j >= i) CHECK(lambda(j).is_zero());
    }
    if (!is_zero_vector(member)) CHECK(vector_gauge(member, w) <= Valuation(s.gauges[0]));
  }
  Vector<Poly<F>> a(d);
  for (Eigen::Index j = 0; j < d; ++j) a(j) = random_poly<F>(rng, field, 3);
  const LaurentVector<F> any = lattice.basis() * to_laurent(PolyMatrix<F>(a));
  if (!is_zero_vector(any)) {
    CHECK(vector_gauge(any, w) <= Valuation(s.gauges[0]));
    const auto lambda = smb_coordinates(any, s);
    for (Eigen::Index j = 0; j < d; ++j) CHECK(lambda(j).is_polynomial());
  }
}

// Column operations that keep an SMB orthogonal: add multiples of norm-smaller
// columns, rescale and permute.
template <class F>
PolyMatrix<F> orthogonality_preserving(Rng& rng, const FieldSpec& field, const std::vector<int>& gauges) {
  const Eigen::Index d = static_cast<Eigen::Index>(gauges.size());
  PolyMatrix<F> u = PolyMatrix<F>::Identity(d, d);
  for (int step = 0; step < 4 && d > 1; ++step) {
    auto [i, j] = random_pair(rng, d);
    if (gauges[i] < gauges[j]) std::swap(i, j);
    const Poly<F> c = random_poly<F>(rng, field, gauges[i] - gauges[j]);
    for (Eigen::Index r = 0; r < d; ++r) u(r, j) += c * u(r, i);
  }
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  PolyMatrix<F> out(d, d);
  for (Eigen::Index j = 0; j < d; ++j) out.col(j) = u.col(perm[j]) * Poly<F>(random_scalar<F>(rng, field, true));
  return out;
}

std::vector<int> sorted_gauges(const std::vector<Valuation>& g) {
  std::vector<int> out;
  for (const auto& v : g) out.push_back(v.value());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

template <class F>
void check_basis_independence(const Lattice<F>& lattice, Rng& rng) {
  const FieldSpec& field = lattice.field();
  const auto s = smb(lattice);
  const Eigen::Index d = lattice.dim();

  const PolyMatrix<F> u = random_unimodular<F>(rng, field, d, 2, 4);
  const Lattice<F> moved(field, lattice.basis() * to_laurent(u), lattice.weights());
  CHECK(smb(moved).gauges == s.gauges);

  const PolyMatrix<F> keep = orthogonality_preserving<F>(rng, field, s.gauges);
  const LaurentMatrix<F> b = s.omegas * to_laurent(keep);
  CHECK(is_orthogonal_basis(b, lattice.weights()));
  CHECK(sorted_gauges(column_gauges(b, lattice.weights())) == s.gauges);

  const LaurentMatrix<F> arbitrary = s.omegas * to_laurent(u);
  if (is_orthogonal_basis(arbitrary, lattice.weights()))
    CHECK(sorted_gauges(column_gauges(arbitrary, lattice.weights())) == s.gauges);
}

}  // namespace

TEST_CASE("weak Popov reduction examples") {
  const PolyMatrix<Rational> id = PolyMatrix<Rational>::Identity(3, 3);
  const auto r0 = weak_popov_reduce(id);
  CHECK(r0.reduced == id);
  CHECK(r0.transform == id);
  CHECK(r0.iterations == 0);

  const auto m = poly_matrix<Rational>(QQ, 2, {{1}, {0, 1}, {0, 1}, {1, 0, 1}});
  const auto r1 = weak_popov_reduce(m);
  CHECK(r1.column_degrees == std::vector<int>{0, 0});
  CHECK(m * r1.transform == r1.reduced);
  CHECK(r1.reduced * r1.inverse_transform == m);
  CHECK(determinant(r1.transform).is_constant());
  CHECK_FALSE(determinant(r1.transform).is_zero());
  CHECK(is_weak_popov(r1.reduced));
  CHECK(rank(ScalarMatrix<Rational>(r1.reduced.unaryExpr([](const Poly<Rational>& p) { return p.coeff(0); }))) == 2);

  const auto t = poly_matrix<Fp>(F2, 2, {{}, {0, 0, 1}, {1}, {0, 1}});
  const auto r2 = weak_popov_reduce(t);
  CHECK(r2.reduced == t);
  CHECK(r2.pivot_rows == std::vector<int>{1, 0});
  CHECK(determinant(r2.transform) == Poly<Fp>(Fp(1, 2)));

  CHECK_THROWS_AS(weak_popov_reduce(poly_matrix<Rational>(QQ, 2, {{1}, {1}, {1}, {1}})), SingularMatrix);
}

TEST_CASE("smb examples") {
  const Lattice<Rational> identity(QQ, LaurentMatrix<Rational>::Identity(3, 3));
  const auto s0 = smb(identity);
  CHECK(s0.gauges == std::vector<int>{0, 0, 0});
  CHECK(s0.omegas == LaurentMatrix<Rational>::Identity(3, 3));
  CHECK(successive_minima(s0) == std::vector<int>{0, 0, 0});

  const Lattice<Fp> diag(F2, diag_lattice<Fp>(F2, {2, -1}));
  const auto s1 = smb(diag);
  CHECK(s1.gauges == std::vector<int>{1, -2});
  CHECK(s1.omegas(0, 0).is_zero());
  CHECK(s1.omegas(1, 0) == mono<Fp>(F2, 1, -1));
  CHECK(s1.omegas(0, 1) == mono<Fp>(F2, 1, 2));
  CHECK(s1.omegas(1, 1).is_zero());

  // Brute-force enumeration over F_2 with coefficient degrees <= 3 gives (0, -2).
  const Lattice<Fp> tw(F2, twisted<Fp>(F2));
  const auto s2 = smb(tw);
  CHECK(s2.gauges == std::vector<int>{0, -2});
  CHECK(check_smb(tw, s2).all());

  const auto [v, g] = shortest_vector(tw);
  CHECK(g == 0);
  CHECK(v(0).is_zero());
  CHECK(v(1) == mono<Fp>(F2, 1, 0));

  const auto [v1, g1] = shortest_vector(diag);
  CHECK(g1 == 1);
  CHECK(v1(1) == mono<Fp>(F2, 1, -1));

  for (int a : {-3, 0, 4}) {
    const Lattice<Rational> line(QQ, diag_lattice<Rational>(QQ, {a}));
    CHECK(successive_minima(smb(line)) == std::vector<int>{-a});
  }
}

TEST_CASE("weights act as diagonal norms") {
  GaugeWeights w(3);
  w << -1, 4, 2;
  const Lattice<Fp> l(F3, LaurentMatrix<Fp>::Identity(3, 3), w);
  const auto s = smb(l);
  CHECK(s.gauges == std::vector<int>{4, 2, -1});
  CHECK(check_smb(l, s).all());
}

TEST_CASE("distance to span examples") {
  const Lattice<Fp> diag(F2, diag_lattice<Fp>(F2, {2, -1}));
  const auto s = smb(diag);
  const LaurentVector<Fp> omega2 = s.omegas.col(1);
  CHECK(distance_to_span(omega2, s, 1) == Valuation(-2));
  CHECK(distance_to_span(omega2, s, 2).is_infinite());
  CHECK(distance_to_span(omega2, s, 0) == vector_gauge(omega2, zero_weights(2)));
  CHECK_THROWS_AS(distance_to_span(omega2, s, 3), DimensionMismatch);
}

TEST_CASE("orthogonality examples") {
  CHECK(is_orthogonal_basis(LaurentMatrix<Fp>(LaurentMatrix<Fp>::Identity(2, 2)), zero_weights(2)));
  LaurentMatrix<Rational> parallel(2, 2);
  parallel << Laurent<Rational>(1), Laurent<Rational>(1), mono<Rational>(QQ, 1, -1), Laurent<Rational>();
  CHECK_FALSE(is_orthogonal_basis(parallel, zero_weights(2)));
  CHECK(is_orthogonal_basis(twisted<Fp>(F2), zero_weights(2)));
  CHECK(leading_matrix(twisted<Fp>(F2), zero_weights(2)) ==
        (ScalarMatrix<Fp>(2, 2) << Fp(0, 2), Fp(1, 2), Fp(1, 2), Fp(0, 2)).finished());
  LaurentMatrix<Rational> with_zero = LaurentMatrix<Rational>::Identity(2, 2);
  with_zero(1, 1) = Laurent<Rational>();
  CHECK_FALSE(is_orthogonal_basis(with_zero, zero_weights(2)));
}

TEST_CASE("lattice validation") {
  LaurentMatrix<Rational> singular(2, 2);
  singular << Laurent<Rational>(1), Laurent<Rational>(1), Laurent<Rational>(1), Laurent<Rational>(1);
  CHECK_THROWS_AS(Lattice<Rational>(QQ, singular), SingularMatrix);
  CHECK_THROWS_AS(Lattice<Rational>(QQ, LaurentMatrix<Rational>::Identity(2, 2), zero_weights(3)), DimensionMismatch);
  CHECK_THROWS_AS(Lattice<Rational>(QQ, LaurentMatrix<Rational>(2, 3)), DimensionMismatch);
}

TEST_CASE("tampered SMB results fail the checks") {
  const Lattice<Fp> tw(F2, twisted<Fp>(F2));
  auto s = smb(tw);
  auto swapped = s;
  std::swap(swapped.gauges[0], swapped.gauges[1]);
  CHECK_FALSE(check_smb(tw, swapped).sorted);

  auto bad_u = s;
  bad_u.U(0, 0) = bad_u.U(0, 0) + Poly<Fp>::monomial(Fp(1, 2), 1);
  const auto c = check_smb(tw, bad_u);
  CHECK_FALSE(c.generation);
  CHECK_FALSE(c.all());

  auto collapsed = s;
  collapsed.omegas.col(1) = collapsed.omegas.col(0);
  CHECK_FALSE(check_smb(tw, collapsed).orthogonal);
}

TEST_CASE("SMB invariants on random lattices") {
  Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index d = 1 + trial % 4;
    GaugeWeights w = zero_weights(d);
    if (trial % 3 == 0)
      for (Eigen::Index i = 0; i < d; ++i) w(i) = std::uniform_int_distribution<int>(-2, 2)(rng);
    check_smb_properties(Lattice<Fp>(F2, random_basis<Fp>(rng, F2, d, -2, 2), w), rng, 30);
    check_smb_properties(Lattice<Fp>(F3, random_basis<Fp>(rng, F3, d, -2, 2), w), rng, 30);
    check_smb_properties(Lattice<Rational>(QQ, random_basis<Rational>(rng, QQ, d, -1, 2), w), rng, 10);
  }
}

TEST_CASE("minima do not depend on the chosen basis") {
  Rng rng(202);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index d = 1 + trial % 4;
    check_basis_independence(Lattice<Fp>(F2, random_basis<Fp>(rng, F2, d, -2, 2)), rng);
    check_basis_independence(Lattice<Fp>(F7, random_basis<Fp>(rng, F7, d, -2, 2)), rng);
    check_basis_independence(Lattice<Rational>(QQ, random_basis<Rational>(rng, QQ, d, -1, 1)), rng);
  }
}

TEST_CASE("tie-break seeds change the path but not the minima") {
  Rng rng(303);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index d = 2 + trial % 4;
    const Lattice<Fp> l(F3, random_basis<Fp>(rng, F3, d, -2, 2));
    const auto base = smb(l);
    for (std::uint64_t seed : {1u, 7u, 12345u}) {
      const auto alt = smb(l, ReduceOptions{seed});
      CHECK(alt.gauges == base.gauges);
      CHECK(check_smb(l, alt).all());
      CHECK(alt.iterations <= alt.iteration_bound);
    }
  }
}

TEST_CASE("reduction is deterministic") {
  Rng rng(404);
  const Lattice<Rational> l(QQ, random_basis<Rational>(rng, QQ, 3, -2, 2));
  const auto a = smb(l), b = smb(l);
  CHECK(a.omegas == b.omegas);
  CHECK(a.U == b.U);
  CHECK(a.pivot_rows == b.pivot_rows);
}
