#include "fockren/altdress.hpp"

#include <algorithm>
#include <cmath>

namespace fockren {

SectorState::SectorState(int n_max, std::vector<SectorTerm> terms) : n_max_(n_max) {
    std::erase_if(terms, [&](const SectorTerm& t) {
        return t.coeff == 0 || t.origin + t.power > n_max_;
    });
    std::sort(terms.begin(), terms.end(), [](const SectorTerm& a, const SectorTerm& b) {
        if (a.origin != b.origin) return a.origin < b.origin;
        return a.power < b.power;
    });
    for (auto& t : terms) {
        if (!terms_.empty() && terms_.back().origin == t.origin &&
            terms_.back().power == t.power) {
            terms_.back().coeff += t.coeff;
        } else {
            terms_.push_back(t);
        }
    }
    std::erase_if(terms_, [](const SectorTerm& t) { return t.coeff == 0; });
}

SectorState SectorState::inject(int n_max, int sector) {
    if (sector < 0 || sector > n_max) throw std::invalid_argument("sector out of range");
    return SectorState(n_max, {SectorTerm{1, 0, sector}});
}

std::string SectorState::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) out += " + ";
        out += std::to_string(terms_[i].coeff);
        if (terms_[i].power > 0) out += "*X^" + std::to_string(terms_[i].power);
        out += "*a" + std::to_string(terms_[i].origin);
    }
    return out;
}

bool operator==(const SectorState& a, const SectorState& b) {
    if (a.n_max_ != b.n_max_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
        if (a.terms_[i].power != b.terms_[i].power) return false;
        if (a.terms_[i].origin != b.terms_[i].origin) return false;
    }
    return true;
}

SectorState sector_raise(const SectorState& state) {
    std::vector<SectorTerm> out;
    for (const auto& t : state.terms()) out.push_back({t.coeff, t.power + 1, t.origin});
    return SectorState(state.n_max(), std::move(out));
}

SectorState wibc_apply(const SectorState& state) {
    std::vector<SectorTerm> out = state.terms();
    for (const auto& t : state.terms()) out.push_back({t.coeff, t.power + 1, t.origin});
    return SectorState(state.n_max(), std::move(out));
}

SectorState wibc_inverse(const SectorState& state) {
    std::vector<SectorTerm> out;
    for (const auto& t : state.terms()) {
        for (int k = 0; t.origin + t.power + k <= state.n_max(); ++k) {
            long long sign = (k % 2 == 0) ? 1 : -1;
            out.push_back({sign * t.coeff, t.power + k, t.origin});
        }
    }
    return SectorState(state.n_max(), std::move(out));
}

std::vector<GlimmSeriesTerm> glimm_series(int n_max, int sector) {
    std::vector<GlimmSeriesTerm> out;
    double factorial = 1.0;
    for (int k = 0; sector + k <= n_max; ++k) {
        if (k > 0) factorial *= k;
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        out.push_back({sign / factorial, k, sector});
    }
    return out;
}

IbcDecomposition ibc_decompose(const ModelSpec& model) {
    // theta must be bounded below by a positive constant, which in the
    // grammar means positive coefficients and IR degree zero
    if (model.theta.is_zero())
        throw std::invalid_argument("abstract boundary condition needs theta > 0");
    ScalingReport rt = scaling(model.theta);
    bool positive = true;
    for (const auto& t : model.theta.terms())
        if (t.coeff.imag() != 0.0 || !(t.coeff.real() > 0.0)) positive = false;
    if (!positive || !(rt.beta == Degree(Rational(0))))
        throw std::invalid_argument(
            "abstract boundary condition needs theta > 0 (positive IR floor)");

    IbcDecomposition out;
    out.s_factor = "H0^{1/2} (1 + H0^{-1} Adag(v))";
    out.s_star_factor = "(1 + A(v) H0^{-1}) H0^{1/2}";
    out.t_factor = "-A(v) H0^{-1} Adag(v) - E";

    // Divergent scalar of A H0^{-1} Adag per fermion. The energy denominator
    // is represented by its boson part omega (the theta floor shifts it by a
    // bounded amount, which does not change the divergence class); E is then
    // chosen as exactly this scalar, so T carries no divergent part.
    RenIntegral scalar = RenIntegral::pair(model.v, model.v * reciprocal(model.omega));
    out.t_scalar = scalar;
    out.t_class = classify(scalar);
    out.ledger.push_back({"A H0^{-1} Adag scalar", scalar});
    out.ledger.push_back({"self-energy choice -E", ren_neg(scalar)});
    return out;
}

RenIntegral glimm_lambda(const ModelSpec& model) {
    Symbol s = model.dressing();
    return RenIntegral::pair(s, s);
}

GlimmState glimm_T_apply(int n_max, int sector, const ModelSpec& model) {
    GlimmState out;
    RenIntegral lambda = glimm_lambda(model);
    out.prefactor = RenScalar::exp_ren(ren_scale(-0.5, lambda));
    out.tag = StateSpace::Core;
    out.series = glimm_series(n_max, sector);
    return out;
}

// ---------------------------------------------------------------------------
// numeric checks

namespace {

struct IbcOps {
    TruncatedFock fock;
    SparseOp x_op; // H0^{-1} Adag
    std::vector<double> h0;

    IbcOps(const ModelSpec& model, const GridSpec& grid) : fock(grid) {
        h0 = fock.h0_diagonal(model.theta, model.omega);
        double floor = *std::min_element(h0.begin(), h0.end());
        if (!(floor > 0.0))
            throw std::invalid_argument("H0 is not strictly positive on the grid");
        SparseOp adag = fock.creation_yukawa(grid_amplitudes(grid, model.v));
        // scale rows by 1/h0
        x_op = adag;
        for (std::size_t r = 0; r < x_op.n; ++r)
            for (std::size_t k = x_op.row_ptr[r]; k < x_op.row_ptr[r + 1]; ++k)
                x_op.val[k] /= h0[r];
    }

    Vec neumann_inverse(const Vec& x, bool parallel) const {
        Vec acc = x;
        Vec term = x;
        Vec next;
        for (int k = 1; k <= fock.grid().n_max; ++k) {
            x_op.apply(term, next, parallel);
            for (auto& v : next) v = -v;
            term = next;
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += term[i];
        }
        return acc;
    }
};

} // namespace

OracleReport check_ibc_bijectivity(const ModelSpec& model, const GridSpec& grid,
                                   bool parallel) {
    IbcOps ops(model, grid);
    const auto& basis = ops.fock.basis();
    double worst = 0.0;
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis.sector(i) <= grid.n_max) cols.push_back(i);
#pragma omp parallel for reduction(max : worst) schedule(dynamic) if (parallel)
    for (long ci = 0; ci < static_cast<long>(cols.size()); ++ci) {
        Vec e(basis.size(), Complex(0, 0));
        e[cols[ci]] = 1.0;
        // W (W^{-1} e) = e
        Vec inv = ops.neumann_inverse(e, false);
        Vec xe;
        ops.x_op.apply(inv, xe, false);
        for (std::size_t i = 0; i < inv.size(); ++i) xe[i] += inv[i];
        xe[cols[ci]] -= 1.0;
        worst = std::max(worst, norm2(xe));
        // W^{-1} (W e) = e
        Vec we;
        ops.x_op.apply(e, we, false);
        for (std::size_t i = 0; i < we.size(); ++i) we[i] += e[i];
        Vec back = ops.neumann_inverse(we, false);
        back[cols[ci]] -= 1.0;
        worst = std::max(worst, norm2(back));
    }
    std::ostringstream os;
    os << "modes=" << grid.modes.size() << " n_max=" << grid.n_max
       << " fermions=" << grid.fermions;
    return OracleReport{"ibc_bijectivity", os.str(), worst, 1e-12, worst < 1e-12};
}

OracleReport check_glimm_inverse(const ModelSpec& model, const GridSpec& grid, bool parallel) {
    IbcOps ops(model, grid);
    const auto& basis = ops.fock.basis();
    auto exp_x = [&](const Vec& x, double sign) {
        Vec acc = x;
        Vec term = x;
        Vec next;
        for (int k = 1; k <= grid.n_max; ++k) {
            ops.x_op.apply(term, next, false);
            double f = sign / k;
            for (auto& v : next) v *= f;
            term = next;
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += term[i];
        }
        return acc;
    };
    double worst = 0.0;
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < basis.size(); ++i) cols.push_back(i);
#pragma omp parallel for reduction(max : worst) schedule(dynamic) if (parallel)
    for (long ci = 0; ci < static_cast<long>(cols.size()); ++ci) {
        Vec e(basis.size(), Complex(0, 0));
        e[cols[ci]] = 1.0;
        Vec t = exp_x(e, -1.0);
        Vec back = exp_x(t, 1.0);
        back[cols[ci]] -= 1.0;
        worst = std::max(worst, norm2(back));
    }
    std::ostringstream os;
    os << "modes=" << grid.modes.size() << " n_max=" << grid.n_max;
    return OracleReport{"glimm_inverse", os.str(), worst, 1e-12, worst < 1e-12};
}

} // namespace fockren
