#include "wavelab/cache.hpp"
#include "wavelab/radialop.hpp"
#include "wavelab/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>

using namespace wavelab;

TEST_CASE("free spectrum against Bessel zeros") {
  RadialGrid g(40.0, 800);
  Eigenpairs e = spectral_decompose(build_G0(g, 4));
  CHECK(e.residual < 1e-12);
  for (int k = 1; k <= 20; ++k) {
    double j = bessel_J_zero(BesselOrder(1.0), k) / g.R;
    CHECK(std::abs(e.values(k - 1) / (j * j) - 1.0) <= 1e-3);
  }
}

TEST_CASE("potential and perturbed operator") {
  RadialGrid g(20.0, 200);
  PotentialSpec none{0.0, 3.0};
  DiscreteOperator g0 = build_G0(g, 4);
  CHECK((build_G(g, 4, none).matrix - g0.matrix).norm() == 0.0);
  PotentialSpec v{2.0, 3.0};
  CHECK(v(0.0) == 2.0);
  CHECK(v(1.0) == doctest::Approx(2.0 * std::pow(2.0, -1.5)));
  DiscreteOperator op = build_G(g, 4, v);
  Eigen::VectorXd shift = op.matrix.diagonal() - g0.matrix.diagonal();
  CHECK((shift - potential_vector(g, v)).norm() < 1e-11);  // diagonal is ~2/dr^2
  CHECK(std::abs(shift(0) - 2.0) < 3.0 * g.dr() * g.dr());
  // no eigenvalue below its free counterpart by more than sup V
  Eigenpairs e = spectral_decompose(op), e0 = spectral_decompose(g0);
  CHECK(e.values.minCoeff() > 0.0);
  CHECK(((e0.values - e.values).array() <= 2.0).all());
  CHECK_THROWS_AS(PotentialSpec({2.0, 2.0}).validate(4), DomainError);
  CHECK_THROWS_AS(PotentialSpec({-1.0, 3.0}).validate(4), DomainError);
}

TEST_CASE("tridiagonal form") {
  RadialGrid g(10.0, 50);
  DiscreteOperator op = build_G(g, 4, PotentialSpec{});
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(50, -1.0, 2.0);
  CHECK((op.apply(x) - op.matrix * x).norm() < 1e-12);
  CHECK(op.matrix.isApprox(op.matrix.transpose()));
  // interior row: (-1, 2, -1)/dr^2 plus 3/(4 r^2)
  double dr = g.dr(), r = g.node(10);
  CHECK(op.matrix(10, 10) == doctest::Approx(2.0 / (dr * dr) + 0.75 / (r * r) + PotentialSpec{}(r)));
  CHECK(op.matrix(10, 11) == doctest::Approx(-1.0 / (dr * dr)));
}

TEST_CASE("weights") {
  RadialGrid g(10.0, 9);  // nodes 1..9
  CHECK(g.dr() == 1.0);
  Eigen::VectorXd w0 = weight_vector(g, 0.0);
  CHECK((w0.array() == 1.0).all());
  Eigen::VectorXd prod = weight_vector(g, 1.3).cwiseProduct(weight_vector(g, -1.3));
  CHECK((prod.array() - 1.0).abs().maxCoeff() < 1e-14);
  CHECK(weight_vector(g, 2.0)(0) == doctest::Approx(0.5));
  CHECK(weight_matrix(g, 2.0).diagonal()(0) == doctest::Approx(0.5));
}

TEST_CASE("eigen solver and grid rules") {
  Eigenpairs id = spectral_decompose(Eigen::MatrixXd::Identity(5, 5));
  CHECK((id.values.array() - 1.0).abs().maxCoeff() < 1e-15);
  RadialGrid g;
  CHECK(g.R == 64.0);
  CHECK(g.M == 1280);
  CHECK(g.resolves(0.125, 2.0));
  CHECK_FALSE(g.resolves(0.01, 2.0));
  CHECK(g.horizon_ok(48.0, 16.0));
  CHECK_FALSE(g.horizon_ok(60.0, 16.0));
  CHECK(g.index_above(1e9) == g.M);
  CHECK_THROWS_AS(RadialGrid(-1.0, 10), GridError);
  CHECK_THROWS_AS(RadialGrid(10.0, 1), GridError);
}

TEST_CASE("eigenpair cache round trip") {
  RadialGrid g(12.0, 60);
  DiscreteOperator op = build_G(g, 4, PotentialSpec{});
  auto dir = std::filesystem::temp_directory_path() / "wavelab_test_cache";
  std::filesystem::remove_all(dir);
  Eigenpairs a = cached_decompose(op, dir.string());
  Eigenpairs b = cached_decompose(op, dir.string());
  CHECK((a.values - b.values).norm() == 0.0);
  CHECK((a.vectors - b.vectors).norm() == 0.0);
  CHECK_FALSE(load_eigenpairs((dir / "missing.eig").string(), 60).has_value());
  std::string key = cache_key(operator_section(op));
  CHECK_FALSE(load_eigenpairs((dir / (key + ".eig")).string(), 61).has_value());
  std::filesystem::remove_all(dir);
}

TEST_CASE("cache keys") {
  std::map<std::string, std::string> a = {{"n", "4"}, {"M", "1280"}, {"c", "2"}};
  std::map<std::string, std::string> b = {{"n", "4"}, {"M", "1280"}, {"c", "2.0"}};
  std::map<std::string, std::string> c = {{"n", "4"}, {"M", "1281"}, {"c", "2"}};
  CHECK(cache_key(a) == cache_key(a));
  CHECK(cache_key(a) == cache_key(b));
  CHECK(cache_key(a) != cache_key(c));
  CHECK(cache_key(a).size() == 16);
  CHECK(canonical_value(" 2e0 ") == "2");
  CHECK(canonical_value("-0") == "0");
  CHECK(canonical_value("bump") == "bump");
}
