#include "fockren/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fockren {

namespace {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            double step = p1 / dp;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

} // namespace

GridSpec GridSpec::gauss(int d, int n_modes, double lo, double hi, int n_max, int fermions,
                         int fermion_sites) {
    if (!(0.0 < lo && lo < hi)) throw std::invalid_argument("grid needs 0 < lo < hi");
    GridSpec g;
    g.d = d;
    g.n_max = n_max;
    g.fermions = fermions;
    g.fermion_sites = fermions > 0 ? (fermion_sites > 0 ? fermion_sites : n_modes + 1) : 1;
    std::vector<double> x, w;
    gauss_legendre(n_modes, x, w);
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < n_modes; ++i) {
        double r = mid + half * x[i];
        g.modes.push_back(r);
        g.weights.push_back(sphere_area(d) * std::pow(r, d - 1) * half * w[i]);
    }
    return g;
}

double GridSpec::fermion_momentum(int site) const {
    return (site - fermion_sites / 2) * fermion_spacing;
}

Complex grid_pair(const GridSpec& grid, const Symbol& phi, const Symbol& psi) {
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < grid.modes.size(); ++i)
        sum += grid.weights[i] * std::conj(phi.evaluate(grid.modes[i])) *
               psi.evaluate(grid.modes[i]);
    return sum;
}

std::vector<Complex> grid_amplitudes(const GridSpec& grid, const Symbol& phi) {
    std::vector<Complex> u(grid.modes.size());
    for (std::size_t i = 0; i < grid.modes.size(); ++i)
        u[i] = phi.evaluate(grid.modes[i]) * std::sqrt(grid.weights[i]);
    return u;
}

double grid_norm(const GridSpec& grid, const Symbol& phi) {
    return std::sqrt(std::abs(grid_pair(grid, phi, phi)));
}

// ---------------------------------------------------------------------------
// basis

namespace {

std::uint64_t pack(const std::vector<std::uint8_t>& occ) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < occ.size(); ++i) key |= std::uint64_t(occ[i]) << (4 * i);
    return key;
}

} // namespace

FockBasis::FockBasis(const GridSpec& grid) : grid_(grid) {
    const int modes = static_cast<int>(grid.modes.size());
    if (modes > 16 || grid.n_max > 15)
        throw std::invalid_argument("basis supports up to 16 modes and 15 bosons");
    std::vector<std::uint8_t> occ(modes, 0);
    auto emit = [&](auto&& self, int mode, int used) -> void {
        if (mode == modes) {
            rank_[pack(occ)] = occupations_.size();
            occupations_.push_back(occ);
            sectors_.push_back(used);
            return;
        }
        for (int n = 0; n + used <= grid.n_max; ++n) {
            occ[mode] = static_cast<std::uint8_t>(n);
            self(self, mode + 1, used + n);
        }
        occ[mode] = 0;
    };
    emit(emit, 0, 0);
    fermion_count_ = 1;
    for (int j = 0; j < grid.fermions; ++j) fermion_count_ *= grid.fermion_sites;
    total_ = fermion_count_ * occupations_.size();
    if (total_ > grid.budget)
        throw std::length_error("truncated basis exceeds the amplitude budget");
}

int FockBasis::sector(std::size_t index) const { return sectors_[boson_rank(index)]; }

const std::vector<std::uint8_t>& FockBasis::occupation(std::size_t boson_rank) const {
    return occupations_[boson_rank];
}

long FockBasis::boson_rank_of(const std::vector<std::uint8_t>& occ) const {
    auto it = rank_.find(pack(occ));
    return it == rank_.end() ? -1 : static_cast<long>(it->second);
}

int FockBasis::fermion_site(std::size_t fermion_rank, int j) const {
    for (int jj = 0; jj < j; ++jj) fermion_rank /= grid_.fermion_sites;
    return static_cast<int>(fermion_rank % grid_.fermion_sites);
}

std::size_t FockBasis::fermion_rank_shift(std::size_t fermion_rank, int j, int steps) const {
    const int F = grid_.fermion_sites;
    std::size_t stride = 1;
    for (int jj = 0; jj < j; ++jj) stride *= F;
    int site = static_cast<int>((fermion_rank / stride) % F);
    int moved = ((site + steps) % F + F) % F;
    return fermion_rank + (moved - site) * stride;
}

// ---------------------------------------------------------------------------
// sparse operators

SparseOp SparseOp::from_columns(
    std::size_t n, const std::vector<std::vector<std::pair<std::size_t, Complex>>>& cols) {
    SparseOp op;
    op.n = n;
    std::vector<std::size_t> counts(n + 1, 0);
    for (const auto& c : cols)
        for (const auto& [row, v] : c) ++counts[row + 1];
    op.row_ptr.assign(n + 1, 0);
    for (std::size_t r = 0; r < n; ++r) op.row_ptr[r + 1] = op.row_ptr[r] + counts[r + 1];
    op.col.resize(op.row_ptr[n]);
    op.val.resize(op.row_ptr[n]);
    std::vector<std::size_t> cursor(op.row_ptr.begin(), op.row_ptr.end() - 1);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (const auto& [row, v] : cols[c]) {
            op.col[cursor[row]] = c;
            op.val[cursor[row]] = v;
            ++cursor[row];
        }
    }
    return op;
}

void SparseOp::apply(const std::vector<Complex>& x, std::vector<Complex>& y,
                     bool parallel) const {
    y.assign(n, Complex(0.0, 0.0));
#pragma omp parallel for schedule(static) if (parallel)
    for (long r = 0; r < static_cast<long>(n); ++r) {
        Complex acc{0.0, 0.0};
        for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) acc += val[k] * x[col[k]];
        y[r] = acc;
    }
}

SparseOp SparseOp::scaled(Complex c) const {
    SparseOp out = *this;
    for (auto& v : out.val) v *= c;
    return out;
}

SparseOp SparseOp::sum(const SparseOp& a, const SparseOp& b) {
    if (a.n != b.n) throw std::invalid_argument("operator size mismatch");
    SparseOp out;
    out.n = a.n;
    out.row_ptr.assign(a.n + 1, 0);
    std::vector<std::pair<std::size_t, Complex>> merged;
    std::vector<std::size_t> cols;
    std::vector<Complex> vals;
    for (std::size_t r = 0; r < a.n; ++r) {
        merged.clear();
        for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k)
            merged.push_back({a.col[k], a.val[k]});
        for (std::size_t k = b.row_ptr[r]; k < b.row_ptr[r + 1]; ++k)
            merged.push_back({b.col[k], b.val[k]});
        std::sort(merged.begin(), merged.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (std::size_t i = 0; i < merged.size();) {
            Complex acc{0.0, 0.0};
            std::size_t c = merged[i].first;
            while (i < merged.size() && merged[i].first == c) acc += merged[i++].second;
            cols.push_back(c);
            vals.push_back(acc);
        }
        out.row_ptr[r + 1] = cols.size();
    }
    out.col = std::move(cols);
    out.val = std::move(vals);
    return out;
}

double norm2(const Vec& x) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    return std::sqrt(s);
}

Complex dot(const Vec& a, const Vec& b) {
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// ---------------------------------------------------------------------------
// operators

TruncatedFock::TruncatedFock(const GridSpec& grid) : basis_(grid) {}

SparseOp TruncatedFock::creation(const std::vector<Complex>& u) const {
    const auto& g = basis_.grid();
    std::vector<std::vector<std::pair<std::size_t, Complex>>> cols(basis_.size());
    const std::size_t nb = basis_.boson_states();
    for (std::size_t fr = 0; fr < basis_.fermion_states(); ++fr) {
        for (std::size_t br = 0; br < nb; ++br) {
            std::vector<std::uint8_t> occ = basis_.occupation(br);
            for (std::size_t i = 0; i < g.modes.size(); ++i) {
                if (u[i] == Complex(0.0, 0.0)) continue;
                occ[i] += 1;
                long target = basis_.boson_rank_of(occ);
                occ[i] -= 1;
                if (target < 0) continue;
                double amp = std::sqrt(static_cast<double>(occ[i]) + 1.0);
                cols[basis_.index_of(fr, br)].push_back(
                    {basis_.index_of(fr, target), u[i] * amp});
            }
        }
    }
    return SparseOp::from_columns(basis_.size(), cols);
}

SparseOp TruncatedFock::annihilation(const std::vector<Complex>& u) const {
    const auto& g = basis_.grid();
    std::vector<std::vector<std::pair<std::size_t, Complex>>> cols(basis_.size());
    const std::size_t nb = basis_.boson_states();
    for (std::size_t fr = 0; fr < basis_.fermion_states(); ++fr) {
        for (std::size_t br = 0; br < nb; ++br) {
            std::vector<std::uint8_t> occ = basis_.occupation(br);
            for (std::size_t i = 0; i < g.modes.size(); ++i) {
                if (occ[i] == 0 || u[i] == Complex(0.0, 0.0)) continue;
                occ[i] -= 1;
                long target = basis_.boson_rank_of(occ);
                occ[i] += 1;
                if (target < 0) continue;
                double amp = std::sqrt(static_cast<double>(occ[i]));
                cols[basis_.index_of(fr, br)].push_back(
                    {basis_.index_of(fr, target), std::conj(u[i]) * amp});
            }
        }
    }
    return SparseOp::from_columns(basis_.size(), cols);
}

SparseOp TruncatedFock::creation_yukawa(const std::vector<Complex>& u) const {
    const auto& g = basis_.grid();
    if (g.fermions == 0) return creation(u);
    std::vector<std::vector<std::pair<std::size_t, Complex>>> cols(basis_.size());
    const std::size_t nb = basis_.boson_states();
    for (std::size_t fr = 0; fr < basis_.fermion_states(); ++fr) {
        for (std::size_t br = 0; br < nb; ++br) {
            std::vector<std::uint8_t> occ = basis_.occupation(br);
            for (int j = 0; j < g.fermions; ++j) {
                for (std::size_t i = 0; i < g.modes.size(); ++i) {
                    if (u[i] == Complex(0.0, 0.0)) continue;
                    occ[i] += 1;
                    long target = basis_.boson_rank_of(occ);
                    occ[i] -= 1;
                    if (target < 0) continue;
                    double amp = std::sqrt(static_cast<double>(occ[i]) + 1.0);
                    // emitting boson i gives fermion j the opposite recoil
                    std::size_t fr2 = basis_.fermion_rank_shift(fr, j, static_cast<int>(i) + 1);
                    cols[basis_.index_of(fr, br)].push_back(
                        {basis_.index_of(fr2, target), u[i] * amp});
                }
            }
        }
    }
    return SparseOp::from_columns(basis_.size(), cols);
}

SparseOp TruncatedFock::annihilation_yukawa(const std::vector<Complex>& u) const {
    const auto& g = basis_.grid();
    if (g.fermions == 0) return annihilation(u);
    std::vector<std::vector<std::pair<std::size_t, Complex>>> cols(basis_.size());
    const std::size_t nb = basis_.boson_states();
    for (std::size_t fr = 0; fr < basis_.fermion_states(); ++fr) {
        for (std::size_t br = 0; br < nb; ++br) {
            std::vector<std::uint8_t> occ = basis_.occupation(br);
            for (int j = 0; j < g.fermions; ++j) {
                for (std::size_t i = 0; i < g.modes.size(); ++i) {
                    if (occ[i] == 0 || u[i] == Complex(0.0, 0.0)) continue;
                    occ[i] -= 1;
                    long target = basis_.boson_rank_of(occ);
                    occ[i] += 1;
                    if (target < 0) continue;
                    double amp = std::sqrt(static_cast<double>(occ[i]));
                    std::size_t fr2 = basis_.fermion_rank_shift(fr, j, -(static_cast<int>(i) + 1));
                    cols[basis_.index_of(fr, br)].push_back(
                        {basis_.index_of(fr2, target), std::conj(u[i]) * amp});
                }
            }
        }
    }
    return SparseOp::from_columns(basis_.size(), cols);
}

SparseOp TruncatedFock::displacement_generator(const std::vector<Complex>& u) const {
    if (basis_.grid().fermions == 0)
        return SparseOp::sum(creation(u), annihilation(u).scaled(-1.0));
    return SparseOp::sum(creation_yukawa(u), annihilation_yukawa(u).scaled(-1.0));
}

std::vector<double> TruncatedFock::h0_diagonal(const Symbol& theta, const Symbol& omega) const {
    const auto& g = basis_.grid();
    std::vector<double> omega_k(g.modes.size(), 0.0);
    for (std::size_t i = 0; i < g.modes.size(); ++i)
        if (!omega.is_zero()) omega_k[i] = omega.evaluate(g.modes[i]).real();
    std::vector<double> diag(basis_.size(), 0.0);
    for (std::size_t idx = 0; idx < basis_.size(); ++idx) {
        double e = 0.0;
        const auto& occ = basis_.occupation(basis_.boson_rank(idx));
        for (std::size_t i = 0; i < occ.size(); ++i) e += occ[i] * omega_k[i];
        if (!theta.is_zero()) {
            std::size_t fr = basis_.fermion_rank(idx);
            for (int j = 0; j < g.fermions; ++j) {
                double p = std::abs(g.fermion_momentum(basis_.fermion_site(fr, j)));
                e += theta.evaluate(std::max(p, 1e-12)).real();
            }
        }
        diag[idx] = e;
    }
    return diag;
}

std::vector<double> TruncatedFock::number_diagonal() const {
    std::vector<double> diag(basis_.size(), 0.0);
    for (std::size_t idx = 0; idx < basis_.size(); ++idx)
        diag[idx] = static_cast<double>(basis_.sector(idx));
    return diag;
}

SparseOp TruncatedFock::pair_potential(const std::vector<Complex>& amplitudes,
                                       bool all_pairs) const {
    const auto& g = basis_.grid();
    if (g.fermions < 2)
        return SparseOp::from_columns(basis_.size(), std::vector<std::vector<std::pair<std::size_t, Complex>>>(basis_.size()));
    std::vector<std::vector<std::pair<std::size_t, Complex>>> cols(basis_.size());
    const std::size_t nb = basis_.boson_states();
    for (std::size_t fr = 0; fr < basis_.fermion_states(); ++fr) {
        for (int j = 0; j < g.fermions; ++j) {
            for (int jp = 0; jp < g.fermions; ++jp) {
                if (j == jp) continue;
                if (!all_pairs && jp != 0) continue; // first-fermion pairs only
                for (std::size_t i = 0; i < g.modes.size(); ++i) {
                    if (amplitudes[i] == Complex(0.0, 0.0)) continue;
                    // output at P reads input at P + (e_j - e_jp) k
                    std::size_t fr2 = basis_.fermion_rank_shift(fr, j, static_cast<int>(i) + 1);
                    fr2 = basis_.fermion_rank_shift(fr2, jp, -(static_cast<int>(i) + 1));
                    for (std::size_t br = 0; br < nb; ++br)
                        cols[basis_.index_of(fr2, br)].push_back(
                            {basis_.index_of(fr, br), amplitudes[i]});
                }
            }
        }
    }
    return SparseOp::from_columns(basis_.size(), cols);
}

Vec TruncatedFock::exp_apply(const SparseOp& gen, const Vec& x, bool parallel) const {
    Vec y = x;
    Vec term = x;
    Vec next(x.size());
    double ynorm = norm2(y);
    for (int k = 1; k <= 400; ++k) {
        gen.apply(term, next, parallel);
        double inv = 1.0 / k;
        for (auto& v : next) v *= inv;
        term = next;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += term[i];
        double tnorm = norm2(term);
        ynorm = std::max(ynorm, norm2(y));
        if (tnorm <= 1e-17 * std::max(ynorm, 1e-300)) break;
    }
    return y;
}

Vec TruncatedFock::coherent_vector(const std::vector<Complex>& u, bool parallel) const {
    std::vector<std::uint8_t> vacuum(basis_.grid().modes.size(), 0);
    long rank = basis_.boson_rank_of(vacuum);
    Vec x(basis_.size(), Complex(0.0, 0.0));
    x[basis_.index_of(0, rank)] = 1.0;
    return exp_apply(displacement_generator(u), x, parallel);
}

// ---------------------------------------------------------------------------
// checks

namespace {

void project_sectors(const FockBasis& basis, Vec& x, int max_sector) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (basis.sector(i) > max_sector) x[i] = Complex(0.0, 0.0);
}

std::vector<std::size_t> low_sector_columns(const FockBasis& basis, int max_sector) {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis.sector(i) <= max_sector) cols.push_back(i);
    return cols;
}

std::string grid_params(const GridSpec& g) {
    std::ostringstream os;
    os << "d=" << g.d << " modes=" << g.modes.size() << " n_max=" << g.n_max
       << " fermions=" << g.fermions;
    return os.str();
}

OracleReport make_report(std::string check, std::string params, double deviation,
                         double tolerance) {
    OracleReport r;
    r.check = std::move(check);
    r.params = std::move(params);
    r.deviation = deviation;
    r.tolerance = tolerance;
    r.pass = deviation < tolerance;
    return r;
}

} // namespace

OracleReport check_adjointness(const GridSpec& grid, const Symbol& phi) {
    TruncatedFock fock(grid);
    auto u = grid_amplitudes(grid, phi);
    SparseOp up = grid.fermions > 0 ? fock.creation_yukawa(u) : fock.creation(u);
    SparseOp dn = grid.fermions > 0 ? fock.annihilation_yukawa(u) : fock.annihilation(u);
    // entries of dn must be the exact conjugate transpose of up
    double worst = 0.0;
    std::vector<std::unordered_map<std::size_t, Complex>> up_rows(up.n);
    for (std::size_t r = 0; r < up.n; ++r)
        for (std::size_t k = up.row_ptr[r]; k < up.row_ptr[r + 1]; ++k)
            up_rows[r][up.col[k]] = up.val[k];
    std::size_t checked = 0;
    for (std::size_t r = 0; r < dn.n; ++r) {
        for (std::size_t k = dn.row_ptr[r]; k < dn.row_ptr[r + 1]; ++k) {
            auto it = up_rows[dn.col[k]].find(r);
            Complex expect = it == up_rows[dn.col[k]].end() ? Complex(0, 0) : it->second;
            worst = std::max(worst, std::abs(dn.val[k] - std::conj(expect)));
            ++checked;
        }
    }
    (void)checked;
    return make_report("adjointness", grid_params(grid), worst, 1e-15);
}

OracleReport check_w_unitarity(const GridSpec& grid, const Symbol& phi, bool parallel) {
    TruncatedFock fock(grid);
    SparseOp gen = fock.displacement_generator(grid_amplitudes(grid, phi));
    SparseOp genm = gen.scaled(-1.0);
    auto cols = low_sector_columns(fock.basis(), grid.n_max - 2);
    double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(dynamic) if (parallel)
    for (long ci = 0; ci < static_cast<long>(cols.size()); ++ci) {
        Vec e(fock.basis().size(), Complex(0, 0));
        e[cols[ci]] = 1.0;
        Vec wx = fock.exp_apply(gen, e, false);
        Vec back = fock.exp_apply(genm, wx, false);
        back[cols[ci]] -= 1.0;
        worst = std::max(worst, norm2(back));
    }
    return make_report("w_unitarity", grid_params(grid), worst, 1e-10);
}

OracleReport check_overlap(const GridSpec& grid, const Symbol& phi1, const Symbol& phi2,
                           bool parallel) {
    TruncatedFock fock(grid);
    auto u1 = grid_amplitudes(grid, phi1);
    auto u2 = grid_amplitudes(grid, phi2);
    Vec c1 = fock.coherent_vector(u1, parallel);
    Vec c2 = fock.coherent_vector(u2, parallel);
    Complex pair12{0.0, 0.0}, n1{0.0, 0.0}, n2{0.0, 0.0};
    for (std::size_t i = 0; i < u1.size(); ++i) {
        pair12 += std::conj(u1[i]) * u2[i];
        n1 += std::conj(u1[i]) * u1[i];
        n2 += std::conj(u2[i]) * u2[i];
    }
    Complex formula = std::exp(-0.5 * (n1 + n2) + pair12);
    double dev = std::abs(dot(c1, c2) - formula);
    return make_report("overlap", grid_params(grid), dev, 1e-8);
}

OracleReport check_overlap_suite(const GridSpec& grid, int count, unsigned seed,
                                 bool parallel) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> norm_target(0.2, 0.5);
    std::uniform_real_distribution<double> lo_dist(0.3, 1.0);
    std::uniform_real_distribution<double> width(0.5, 2.5);
    std::uniform_int_distribution<int> halfpow(-1, 1);
    auto random_phi = [&]() {
        double lo = lo_dist(rng);
        std::ostringstream os;
        os << "pow(" << halfpow(rng) << "/2)*window(" << lo << "," << lo + width(rng) << ")";
        Symbol raw = parse_symbol(os.str(), grid.d);
        double n = grid_norm(grid, raw);
        return Complex(norm_target(rng) / n, 0.0) * raw;
    };
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        Symbol p1 = random_phi();
        Symbol p2 = random_phi();
        OracleReport r = check_overlap(grid, p1, p2, parallel);
        worst = std::max(worst, r.deviation);
    }
    std::ostringstream os;
    os << grid_params(grid) << " pairs=" << count;
    return make_report("overlap_suite", os.str(), worst, 1e-8);
}

OracleReport check_sector_distribution(const GridSpec& grid, const Symbol& phi,
                                       bool parallel) {
    TruncatedFock fock(grid);
    auto u = grid_amplitudes(grid, phi);
    Vec c = fock.coherent_vector(u, parallel);
    double norm_sq = 0.0;
    for (const auto& v : u) norm_sq += std::norm(v);
    std::vector<double> sector_mass(grid.n_max + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i)
        sector_mass[fock.basis().sector(i)] += std::norm(c[i]);
    double dev_sq = 0.0, dev_abs = 0.0;
    double factorial = 1.0;
    for (int N = 0; N <= grid.n_max - 2; ++N) {
        if (N > 0) factorial *= N;
        double poisson_sq = std::exp(-norm_sq) * std::pow(norm_sq, N) / factorial;
        double poisson_abs = std::exp(-std::sqrt(norm_sq)) * std::pow(norm_sq, N) / factorial;
        dev_sq = std::max(dev_sq, std::abs(sector_mass[N] - poisson_sq));
        dev_abs = std::max(dev_abs, std::abs(sector_mass[N] - poisson_abs));
    }
    std::ostringstream os;
    os << grid_params(grid) << " |phi|^2=" << norm_sq
       << " exp(-|phi|) variant deviates by " << dev_abs;
    return make_report("sector_poisson", os.str(), dev_sq, 1e-8);
}

OracleReport check_truncation_monotone(const Symbol& phi, const std::vector<int>& n_maxes,
                                       bool parallel) {
    double prev = std::numeric_limits<double>::infinity();
    double first = 0.0, last = 0.0;
    bool monotone = true;
    for (std::size_t i = 0; i < n_maxes.size(); ++i) {
        GridSpec g = GridSpec::gauss(1, 6, 0.5, 2.5, n_maxes[i], 0);
        // measure the overlap defect of a coherent pair at this truncation
        Symbol phi2 = Complex(0.8, 0.1) * phi;
        OracleReport r = check_overlap(g, phi, phi2, parallel);
        if (i == 0) first = r.deviation;
        last = r.deviation;
        if (r.deviation > prev) monotone = false;
        prev = r.deviation;
    }
    std::ostringstream os;
    os << "n_max sweep, first=" << first << " last=" << last;
    OracleReport out = make_report("truncation_monotone", os.str(),
                                   monotone && last < 1e-2 * first ? 0.0 : 1.0, 0.5);
    return out;
}

OracleReport check_pullthrough(const GridSpec& grid, const Symbol& phi, const Symbol& phi2,
                               bool parallel) {
    TruncatedFock fock(grid);
    auto u = grid_amplitudes(grid, phi);
    auto u2 = grid_amplitudes(grid, phi2);
    SparseOp adag = fock.creation(u);
    SparseOp gen = fock.displacement_generator(u2);
    Complex pairing{0.0, 0.0};
    for (std::size_t i = 0; i < u.size(); ++i) pairing += std::conj(u[i]) * u2[i];
    auto cols = low_sector_columns(fock.basis(), grid.n_max - 2);
    double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(dynamic) if (parallel)
    for (long ci = 0; ci < static_cast<long>(cols.size()); ++ci) {
        Vec e(fock.basis().size(), Complex(0, 0));
        e[cols[ci]] = 1.0;
        Vec we = fock.exp_apply(gen, e, false);
        Vec a_we, w_ae;
        adag.apply(we, a_we, false);
        Vec ae;
        adag.apply(e, ae, false);
        w_ae = fock.exp_apply(gen, ae, false);
        Vec r(e.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = a_we[i] - w_ae[i] - pairing * we[i];
        project_sectors(fock.basis(), r, grid.n_max - 2);
        worst = std::max(worst, norm2(r));
    }
    return make_report("pullthrough", grid_params(grid), worst, 1e-8);
}

OracleReport check_commutator_potential(const GridSpec& grid, const Symbol& phi,
                                        const Symbol& phi2, bool parallel) {
    TruncatedFock fock(grid);
    auto u = grid_amplitudes(grid, phi);
    auto u2 = grid_amplitudes(grid, phi2);
    SparseOp adag = fock.creation_yukawa(u);
    SparseOp a = fock.annihilation_yukawa(u2);
    Complex pairing{0.0, 0.0};
    for (std::size_t i = 0; i < u.size(); ++i) pairing += std::conj(u2[i]) * u[i];
    // V(phi2* phi) amplitudes w_i phi2*(k_i) phi(k_i) = conj(u2_i) u_i
    std::vector<Complex> pamp(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) pamp[i] = std::conj(u2[i]) * u[i];
    SparseOp v = fock.pair_potential(pamp, true);
    const int M = grid.fermions;
    auto cols = low_sector_columns(fock.basis(), grid.n_max - 2);
    double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(dynamic) if (parallel)
    for (long ci = 0; ci < static_cast<long>(cols.size()); ++ci) {
        Vec e(fock.basis().size(), Complex(0, 0));
        e[cols[ci]] = 1.0;
        Vec ae, da, ad, tmp;
        a.apply(e, tmp, false);
        adag.apply(tmp, da, false); // Adag A e
        adag.apply(e, tmp, false);
        a.apply(tmp, ad, false); // A Adag e
        Vec ve;
        v.apply(e, ve, false);
        // [Adag, A] + M<phi,phi2... (with conj ordering) + V = 0
        Vec r(e.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = (da[i] - ad[i]) + static_cast<double>(M) * pairing * e[i] + ve[i];
        project_sectors(fock.basis(), r, grid.n_max - 2);
        worst = std::max(worst, norm2(r));
    }
    std::ostringstream os;
    os << grid_params(grid) << " M=" << M;
    return make_report("commutator_potential", os.str(), worst, 1e-8);
}

OracleReport check_number_h0_commute(const GridSpec& grid, const Symbol& phi) {
    TruncatedFock fock(grid);
    // with a constant dispersion h0 = omega * N, so the commutator vanishes
    Symbol omega = Symbol::constant(grid.d, 1.0);
    auto h0 = fock.h0_diagonal(Symbol::zero(grid.d), omega);
    auto n = fock.number_diagonal();
    double worst = 0.0;
    for (std::size_t i = 0; i < h0.size(); ++i) worst = std::max(worst, std::abs(h0[i] - n[i]));
    (void)phi;
    return make_report("number_h0_commute", grid_params(grid), worst, 1e-14);
}

OracleReport check_selfenergy_cross(const ModelSpec& model, const GridSpec& grid) {
    Symbol s = model.dressing();
    Complex grid_value = grid_pair(grid, model.v, s);
    RenIntegral cont = RenIntegral::pair(model.v, s);
    if (classify(cont) != Convergence::Convergent)
        throw std::invalid_argument("cross check needs a windowed (convergent) model");
    Complex exact = evaluate_convergent(cont, 1e-12);
    double dev = std::abs(grid_value - exact) / std::max(std::abs(exact), 1e-300);
    std::ostringstream os;
    os << grid_params(grid) << " <v,s>=" << exact.real();
    return make_report("selfenergy_cross", os.str(), dev, 1e-9);
}

OracleReport check_pullback_cutoff(const ModelSpec& model, const GridSpec& grid,
                                   bool parallel) {
    if (!model.theta.is_zero())
        throw std::invalid_argument("cutoff pullback check is stated for theta = 0");
    TruncatedFock fock(grid);
    Symbol s = model.dressing();
    auto uv = grid_amplitudes(grid, model.v);
    auto us = grid_amplitudes(grid, s);
    SparseOp adag = fock.creation_yukawa(uv);
    SparseOp a = fock.annihilation_yukawa(uv);
    SparseOp gen = fock.displacement_generator(us);
    SparseOp genm = gen.scaled(-1.0);
    auto h0 = fock.h0_diagonal(model.theta, model.omega);
    const int M = grid.fermions;
    Complex e_const{0.0, 0.0};
    for (std::size_t i = 0; i < uv.size(); ++i) e_const += std::conj(uv[i]) * us[i];
    e_const *= static_cast<double>(M);
    // V(v* s) amplitudes
    std::vector<Complex> pamp(uv.size());
    for (std::size_t i = 0; i < uv.size(); ++i) pamp[i] = std::conj(uv[i]) * us[i];
    SparseOp v = fock.pair_potential(pamp, true);

    auto cols = low_sector_columns(fock.basis(), grid.n_max - 2);
    double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(dynamic) if (parallel)
    for (long ci = 0; ci < static_cast<long>(cols.size()); ++ci) {
        Vec e(fock.basis().size(), Complex(0, 0));
        e[cols[ci]] = 1.0;
        Vec we = fock.exp_apply(gen, e, false);
        Vec he(we.size(), Complex(0, 0));
        {
            Vec tmp;
            adag.apply(we, tmp, false);
            for (std::size_t i = 0; i < he.size(); ++i) he[i] += tmp[i];
            a.apply(we, tmp, false);
            for (std::size_t i = 0; i < he.size(); ++i) he[i] += tmp[i];
            for (std::size_t i = 0; i < he.size(); ++i)
                he[i] += h0[i] * we[i] - e_const * we[i];
        }
        Vec back = fock.exp_apply(genm, he, false);
        // subtract (H0 + V) e
        Vec ve;
        v.apply(e, ve, false);
        back[cols[ci]] -= h0[cols[ci]];
        for (std::size_t i = 0; i < back.size(); ++i) back[i] -= ve[i];
        project_sectors(fock.basis(), back, grid.n_max - 2);
        worst = std::max(worst, norm2(back));
    }
    std::ostringstream os;
    os << grid_params(grid) << " M=" << M << " |s|_grid=" << grid_norm(grid, s);
    return make_report("pullback_cutoff", os.str(), worst, 1e-6);
}

} // namespace fockren
