// test_kernels.cpp — OpenMP kernels reproduce the serial reference bit for bit

#include <doctest.h>

#include "dqw/errors.hpp"
#include "dqw/kernels.hpp"
#include "dqw/wigner.hpp"

using namespace dqw;

namespace {

struct ThreadGuard {
    int saved = kernels::thread_count();
    explicit ThreadGuard(int n) { kernels::set_thread_count(n); }
    ~ThreadGuard() { kernels::set_thread_count(saved); }
};

} // namespace

TEST_CASE("kernels: serial and omp agree exactly") {
    const ThreadGuard guard(4);
    const ModelParams p{12.0, 0.6};
    const auto tr = truncation_for(p);
    const SeriesTables tables(p, tr, 40);

    SUBCASE("probability profile") {
        std::vector<double> a(81), b(81);
        kernels::serial::probability_profile(tables, -40, 40, a);
        kernels::omp::probability_profile(tables, -40, 40, b);
        CHECK(a == b);
    }
    SUBCASE("dephased window") {
        Eigen::MatrixXd a, b;
        kernels::serial::dephased_window(tables, 30, a);
        kernels::omp::dephased_window(tables, 30, b);
        CHECK(a == b);
        CHECK(a == a.transpose());
    }
    SUBCASE("wigner grid") {
        const auto k = wigner::closed_k_nodes(33);
        std::vector<double> a(21 * 33), b(21 * 33);
        kernels::serial::wigner_grid(p, tr, -10, 10, k, a);
        kernels::omp::wigner_grid(p, tr, -10, 10, k, b);
        CHECK(a == b);
    }
    SUBCASE("quadrature block") {
        const oracle::PropagatorTable table(p, oracle::QuadratureSpec{128});
        Eigen::MatrixXcd a, b;
        kernels::serial::quadrature_block(table, -6, 6, a);
        kernels::omp::quadrature_block(table, -6, 6, b);
        CHECK(a == b);
    }
}

TEST_CASE("kernels: range errors are raised before any parallel work") {
    const ModelParams p{2.0, 0.1};
    const SeriesTables tables(p, truncation_for(p), 5);
    std::vector<double> out(11);
    CHECK_THROWS_AS(kernels::omp::probability_profile(tables, -6, 4, out), ContractError);
    std::vector<double> small(3);
    CHECK_THROWS_AS(kernels::omp::probability_profile(tables, -5, 5, small), InvalidInput);
    Eigen::MatrixXd m;
    CHECK_THROWS_AS(kernels::omp::dephased_window(tables, 6, m), ContractError);
}

TEST_CASE("kernels: Wigner grid backends agree through the public entry point") {
    const ModelParams p{9.0, 0.2};
    const auto k = wigner::periodic_k_nodes(40);
    const auto a = wigner::wigner_grid(p, -12, 12, k, wigner::KGridKind::periodic, specfun::kDefaultEpsTail,
                                       kernels::Backend::serial);
    const auto b = wigner::wigner_grid(p, -12, 12, k, wigner::KGridKind::periodic, specfun::kDefaultEpsTail,
                                       kernels::Backend::omp);
    CHECK(a.values == b.values);
}
