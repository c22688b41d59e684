#pragma once

#include <cstdint>
#include <unordered_map>

#include "fockren/model.hpp"
#include "fockren/renint.hpp"

namespace fockren {

// Discretized momentum grid: boson modes with quadrature weights plus an
// optional fermion momentum lattice (shifts act cyclically, which keeps all
// ladder-operator identities exact on the truncated space).
struct GridSpec {
    int d = 1;
    int n_max = 8;     // boson number truncation
    int fermions = 0;  // 0: boson-only Fock space
    int fermion_sites = 1;
    double fermion_spacing = 0.5;
    std::vector<double> modes;   // |k| values, strictly positive
    std::vector<double> weights; // include the angular factor S_{d-1} |k|^{d-1}
    std::size_t budget = 1000000;

    // Gauss-Legendre nodes on [lo, hi]
    static GridSpec gauss(int d, int n_modes, double lo, double hi, int n_max, int fermions,
                          int fermion_sites = 0);
    double fermion_momentum(int site) const;
};

// <phi, psi> on the grid
Complex grid_pair(const GridSpec& grid, const Symbol& phi, const Symbol& psi);
// weighted amplitudes u_i = phi(k_i) sqrt(w_i)
std::vector<Complex> grid_amplitudes(const GridSpec& grid, const Symbol& phi);
double grid_norm(const GridSpec& grid, const Symbol& phi);

// Occupation-number basis over the modes, truncated at n_max bosons, tensor
// the fermion lattice.
class FockBasis {
public:
    explicit FockBasis(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    std::size_t size() const { return total_; }
    std::size_t boson_states() const { return occupations_.size(); }
    std::size_t fermion_states() const { return fermion_count_; }

    int sector(std::size_t index) const; // boson number
    const std::vector<std::uint8_t>& occupation(std::size_t boson_rank) const;
    std::size_t boson_rank(std::size_t index) const { return index % occupations_.size(); }
    std::size_t fermion_rank(std::size_t index) const { return index / occupations_.size(); }
    int fermion_site(std::size_t fermion_rank, int j) const; // j in [0, M)

    std::size_t index_of(std::size_t fermion_rank, std::size_t boson_rank) const {
        return fermion_rank * occupations_.size() + boson_rank;
    }
    // -1 when the occupation leaves the truncation
    long boson_rank_of(const std::vector<std::uint8_t>& occ) const;
    std::size_t fermion_rank_shift(std::size_t fermion_rank, int j, int steps) const;

private:
    GridSpec grid_;
    std::vector<std::vector<std::uint8_t>> occupations_;
    std::unordered_map<std::uint64_t, std::size_t> rank_;
    std::vector<int> sectors_;
    std::size_t fermion_count_ = 1;
    std::size_t total_ = 0;
};

// Compressed sparse rows; apply() parallelizes over rows unless the caller
// asks for the serial reference path.
struct SparseOp {
    std::size_t n = 0;
    std::vector<std::size_t> row_ptr;
    std::vector<std::size_t> col;
    std::vector<Complex> val;

    static SparseOp from_columns(std::size_t n,
                                 const std::vector<std::vector<std::pair<std::size_t, Complex>>>& cols);
    void apply(const std::vector<Complex>& x, std::vector<Complex>& y, bool parallel) const;
    SparseOp scaled(Complex c) const;
    static SparseOp sum(const SparseOp& a, const SparseOp& b);
};

using Vec = std::vector<Complex>;

double norm2(const Vec& x);
Complex dot(const Vec& a, const Vec& b);

// Second-quantized operators on the truncated basis.
class TruncatedFock {
public:
    TruncatedFock(const GridSpec& grid);

    const FockBasis& basis() const { return basis_; }
    const GridSpec& grid() const { return basis_.grid(); }

    // boson-only ladder operators (no fermion shift)
    SparseOp creation(const std::vector<Complex>& u) const;
    SparseOp annihilation(const std::vector<Complex>& u) const;
    // Yukawa operators: every fermion creates, with momentum recoil
    SparseOp creation_yukawa(const std::vector<Complex>& u) const;
    SparseOp annihilation_yukawa(const std::vector<Complex>& u) const;
    // generator a_dag(u) - a(u) (or the Yukawa variant when fermions > 0)
    SparseOp displacement_generator(const std::vector<Complex>& u) const;
    // diagonal of dGamma_x(theta) + dGamma_y(omega)
    std::vector<double> h0_diagonal(const Symbol& theta, const Symbol& omega) const;
    std::vector<double> number_diagonal() const;
    // pair potentials; amplitudes are w_i * profile(k_i)
    SparseOp pair_potential(const std::vector<Complex>& amplitudes, bool all_pairs) const;

    // y = e^{gen} x by the truncation-convergent series; the series length
    // comes from the ladder norm bound 2 |u| sqrt(n_max+1)
    Vec exp_apply(const SparseOp& gen, const Vec& x, bool parallel) const;

    Vec coherent_vector(const std::vector<Complex>& u, bool parallel) const;

private:
    FockBasis basis_;
};

struct OracleReport {
    std::string check;
    std::string params;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

OracleReport check_adjointness(const GridSpec& grid, const Symbol& phi);
OracleReport check_w_unitarity(const GridSpec& grid, const Symbol& phi, bool parallel = true);
OracleReport check_overlap(const GridSpec& grid, const Symbol& phi1, const Symbol& phi2,
                           bool parallel = true);
// count random windowed pairs with |phi| <= 0.5
OracleReport check_overlap_suite(const GridSpec& grid, int count, unsigned seed,
                                 bool parallel = true);
// sector norms against the coherent-state Poisson weights; also reports the
// deviation of the e^{-|phi|} variant so the exponent question is settled
OracleReport check_sector_distribution(const GridSpec& grid, const Symbol& phi,
                                       bool parallel = true);
OracleReport check_truncation_monotone(const Symbol& phi, const std::vector<int>& n_maxes,
                                       bool parallel = true);
OracleReport check_pullthrough(const GridSpec& grid, const Symbol& phi, const Symbol& phi2,
                               bool parallel = true);
OracleReport check_commutator_potential(const GridSpec& grid, const Symbol& phi,
                                        const Symbol& phi2, bool parallel = true);
OracleReport check_number_h0_commute(const GridSpec& grid, const Symbol& phi);
OracleReport check_selfenergy_cross(const ModelSpec& model, const GridSpec& grid);
// |W^* (H0 + Adag + A - E) W - (H0 + V)| on sectors <= n_max - 2
OracleReport check_pullback_cutoff(const ModelSpec& model, const GridSpec& grid,
                                   bool parallel = true);

} // namespace fockren
