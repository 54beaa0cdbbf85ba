#ifndef DBP_GAS_HPP
#define DBP_GAS_HPP

#include "dbp/lattice.hpp"
#include "dbp/series.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dbp {

enum class GasLattice { chain, square_torus, triangular_torus, continuum_rod };

// A repulsive gas one dimension below its partner DBP model. The exclusion
// set is the partner's neighbor set with the origin removed.
struct GasModel {
    GasLattice lattice;
    std::string name;

    static GasModel preset(std::string_view name); // dimer | hard-square | hard-hexagon | hard-rod
    static GasModel partner_of(const LatticeModel& m);
    bool on_lattice() const { return lattice != GasLattice::continuum_rod; }
};

// Density of the 1-d continuum hard-rod gas: [z^N] = (-1)^{N+1} N^N / N!.
Series hard_rod_density_series(int K);

// Pressure of the 1-d continuum hard-rod gas: [z^N] = (-1)^{N+1} N^{N-1} / N!.
Series hard_rod_pressure_series(int K);

// Pressure of the 1-d dimer gas, p(z) = ln(1/2 + sqrt(1+4z)/2).
Series dimer_pressure_series(int K);

struct TorusOptions {
    int width_budget = 16;
    bool parallel = true;
    // Deleted (row, col) sites, reduced mod the torus size. Used by the
    // occupancy method to cut out the closed neighborhood of the origin.
    std::vector<std::pair<int, int>> deleted;
};

// |Lambda|: W for the chain (W-cycle), W*W for the 2-d tori.
long torus_site_count(const GasModel& model, int W);

// Grand canonical partition polynomial on the torus, mod z^{K+1}. All
// coefficients are nonnegative integers (independent sets with exclusion).
Series torus_partition_polynomial(const GasModel& model, int W, int K,
                                  const TorusOptions& opt = {});

// Density series to order K from a torus of linear size W = K+2; exact
// infinite-volume coefficients by the stabilization margin.
Series density_series_tm(const GasModel& model, int K, const TorusOptions& opt = {});

// Independent oracle: rho = z Z_{Lambda minus N(0)} / Z_Lambda on a torus of
// linear size W >= K+2.
Series density_via_occupancy(const GasModel& model, int W, int K, const TorusOptions& opt = {});

} // namespace dbp

#endif
