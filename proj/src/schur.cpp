#include "qhc/schur.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "qhc/error.hpp"
#include "qhc/logic.hpp"

namespace qhc::schur {

namespace {

using Index = std::vector<std::size_t>;

Matrix sub(const Matrix& m, const Index& rows, const Index& cols) {
    Matrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
    return out;
}

Vector gather(std::span<const double> v, const Index& idx) {
    Vector out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(v[i]);
    return out;
}

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

SymMatrix invert_c(const SymMatrix& c, const std::string& label) {
    try {
        return inverse(c);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularMatrix) throw Error(ErrorCode::SingularC, "C" + label + " is not invertible");
        throw;
    }
}

Matrix invert_t(const Matrix& m, const std::string& label) {
    try {
        return inverse(m);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularMatrix) throw Error(ErrorCode::SingularT, "T" + label + " is singular");
        throw;
    }
}

// Root y of x·T·x = rhs for x = (given, y) with T a symmetric 2×2 matrix.
double quadratic_partner(const Matrix& t, double given, double rhs, bool plus_root) {
    const double a = t(1, 1);
    const double b = t(0, 1) * given; // half the linear coefficient
    const double c = t(0, 0) * given * given - rhs;
    const double scale = std::max({std::abs(t(0, 0)), std::abs(t(0, 1)), std::abs(t(1, 1))});
    if (std::abs(a) <= 1e-14 * scale) {
        if (std::abs(b) <= 1e-14 * scale) throw Error(ErrorCode::NoRealRoot, "degenerate quadratic");
        return -c / (2.0 * b);
    }
    const double disc = b * b - a * c;
    if (disc < 0.0) throw Error(ErrorCode::NoRealRoot, "negative discriminant");
    const double root = std::sqrt(disc);
    return plus_root ? (-b + root) / a : (-b - root) / a;
}

std::vector<SymMatrix> inverses(std::span<const SymMatrix> family, int arity) {
    std::vector<SymMatrix> out;
    out.reserve(family.size());
    for (std::uint32_t i = 0; i < family.size(); ++i) out.push_back(invert_c(family[i], logic::bit_string(i, arity)));
    return out;
}

} // namespace

std::vector<SymMatrix> c_family(const SymMatrix& c0, std::span<const InputSlot> slots) {
    const int arity = static_cast<int>(slots.size());
    for (const auto& [i, j] : slots)
        if (i >= c0.order() || j >= c0.order()) throw Error(ErrorCode::BadInput, "input slot outside C");
    std::vector<SymMatrix> out;
    for (std::uint32_t idx = 0; idx < (std::uint32_t{1} << arity); ++idx) {
        SymMatrix c = c0;
        const auto bits = logic::bits_of(idx, arity);
        for (int v = 0; v < arity; ++v)
            if (bits[static_cast<std::size_t>(v)]) c.add(slots[static_cast<std::size_t>(v)].first, slots[static_cast<std::size_t>(v)].second, 1.0);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<SymMatrix> half_adder_c_family(const SymMatrix& c00) {
    if (c00.order() != 4) throw Error(ErrorCode::BadInput, "the half-adder form needs a 4x4 C");
    const InputSlot slots[] = {{0, 1}, {2, 3}};
    return c_family(c00, slots);
}

std::vector<SymMatrix> full_adder_c_family(const SymMatrix& c000) {
    if (c000.order() != 6) throw Error(ErrorCode::BadInput, "the full-adder form needs a 6x6 C");
    const InputSlot slots[] = {{0, 1}, {2, 3}, {4, 5}};
    return c_family(c000, slots);
}

// ---------------------------------------------------------------------------

SymMatrix schur_complement(const BlockPartition& p, std::uint32_t input) {
    if (input >= p.C.size()) throw Error(ErrorCode::UnknownInput, "input index out of range");
    const SymMatrix& c = p.C[input];
    const std::size_t l = p.output_count();
    if (p.A.rows() != c.order() || p.A.cols() != l) throw Error(ErrorCode::BadInput, "A has the wrong shape");
    const SymMatrix cinv = invert_c(c, logic::bit_string(input, p.input_arity));
    SymMatrix s = p.B;
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = i; j < l; ++j) s.add(i, j, -bilinear(p.A.column(i), cinv, p.A.column(j)));
    return s;
}

SymMatrix assemble(const BlockPartition& p, std::uint32_t input) {
    if (input >= p.C.size()) throw Error(ErrorCode::UnknownInput, "input index out of range");
    const SymMatrix& c = p.C[input];
    const std::size_t m = c.order(), l = p.output_count();
    if (l > 0 && (p.A.rows() != m || p.A.cols() != l)) throw Error(ErrorCode::BadInput, "A has the wrong shape");
    SymMatrix h(m + l);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) h.set(i, j, c(i, j));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < l; ++k) h.set(i, m + k, p.A(i, k));
    for (std::size_t a = 0; a < l; ++a)
        for (std::size_t b = a; b < l; ++b) h.set(m + a, m + b, p.B(a, b));
    return h;
}

gates::HamiltonianFn assembled_family(BlockPartition p) {
    return [p = std::move(p)](std::uint32_t input) { return assemble(p, input); };
}

SymMatrix woodbury_diff(const SymMatrix& c000, const SymMatrix& c_a, std::span<const std::size_t> positions) {
    const std::size_t n = c000.order();
    if (c_a.order() != n) throw Error(ErrorCode::BadInput, "C matrices differ in order");
    std::vector<bool> in_p(n, false);
    for (auto i : positions) {
        if (i >= n) throw Error(ErrorCode::BadInput, "position outside C");
        in_p[i] = true;
    }
    const Matrix delta = c_a.matrix() - c000.matrix();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (delta(i, j) != 0.0 && !(in_p[i] && in_p[j]))
                throw Error(ErrorCode::BadInput, "C_a - C000 has support outside the positions");

    const Matrix q = invert_c(c000, "000").matrix();
    Index p(positions.begin(), positions.end());
    Index all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    const Matrix d_pp = sub(delta, p, p);
    const Matrix middle = Matrix::identity(p.size()) + d_pp * sub(q, p, p);
    Matrix middle_inv;
    try {
        middle_inv = inverse(middle);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularMatrix)
            throw Error(ErrorCode::SingularProjection, "projected Woodbury matrix is singular");
        throw;
    }
    const Matrix update = sub(q, all, p) * middle_inv * d_pp * sub(q, p, all);
    return SymMatrix::symmetrize(-1.0 * update);
}

// ---------------------------------------------------------------------------

Vector residuals_half_adder(std::span<const SymMatrix> c, std::span<const double> u, std::span<const double> v) {
    if (c.size() != 4) throw Error(ErrorCode::BadInput, "half-adder residuals need four C matrices");
    const auto inv = inverses(c, 2);
    const auto uv = [&](int i) { return bilinear(u, inv[static_cast<std::size_t>(i)], v); };
    const auto vv = [&](int i) { return bilinear(v, inv[static_cast<std::size_t>(i)], v); };
    return {uv(1) - uv(3), uv(2) - uv(3), vv(1) - vv(2)};
}

Vector residuals_full_adder(std::span<const SymMatrix> c, std::span<const double> u, std::span<const double> v) {
    if (c.size() != 8) throw Error(ErrorCode::BadInput, "full-adder residuals need eight C matrices");
    const auto inv = inverses(c, 3);
    const auto uu = [&](int i) { return bilinear(u, inv[static_cast<std::size_t>(i)], u); };
    const auto vv = [&](int i) { return bilinear(v, inv[static_cast<std::size_t>(i)], v); };
    const auto uv = [&](int i) { return bilinear(u, inv[static_cast<std::size_t>(i)], v); };
    Vector res;
    res.push_back(uu(3) - uu(5));
    res.push_back(uu(5) - uu(6));
    res.push_back(vv(1) - vv(2));
    res.push_back(vv(2) - vv(4));
    constexpr int order[] = {3, 5, 6, 1, 2, 4};
    for (int k = 0; k + 1 < 6; ++k) res.push_back(uv(order[k]) - uv(order[k + 1]));
    const double a = uu(3) - uu(7);
    const double b = vv(1) - vv(7);
    const double cc = uv(1) - uv(7);
    const double t = (a + b - cc) / 3.0;
    res.push_back(a - t);
    res.push_back(b - t);
    return res;
}

// ---------------------------------------------------------------------------

BlockPartition solve_half_adder(const SymMatrix& c00, const HalfAdderParams& prm) {
    if (prm.r == 0.0 || prm.s == 0.0) throw Error(ErrorCode::BadParams, "scale parameters r and s must be nonzero");
    const auto family = half_adder_c_family(c00);
    const SymMatrix q = invert_c(c00, "00");
    const Matrix qp = q.matrix() + (family[3].matrix() - c00.matrix());
    const Matrix t12 = invert_t(sub(qp, {0, 1}, {0, 1}), "12");
    const Matrix t34 = invert_t(sub(qp, {2, 3}, {2, 3}), "34");
    const Matrix t1234 = invert_t(qp, "1234");
    const double sgn = prm.r > 0.0 ? 1.0 : -1.0;

    Vector vh(4);
    vh[0] = prm.v1;
    vh[1] = quadratic_partner(t12, prm.v1, sgn, prm.branch & 1);
    vh[2] = prm.v3;
    vh[3] = quadratic_partner(t34, prm.v3, sgn, prm.branch & 2);

    const Vector w12 = t12 * gather(vh, {0, 1});
    const Vector w34 = t34 * gather(vh, {2, 3});
    const Vector z = t1234 * std::span<const double>(vh);
    Vector uh(4);
    uh[0] = prm.u1;
    if (std::abs(w12[1]) < 1e-14) throw Error(ErrorCode::SingularT, "u2 cannot be eliminated");
    uh[1] = (1.0 - uh[0] * w12[0]) / w12[1];
    const Matrix sys{{w34[0], w34[1]}, {z[2], z[3]}};
    Vector u34;
    try {
        const double rhs[] = {1.0, 1.0 - uh[0] * z[0] - uh[1] * z[1]};
        u34 = solve(sys, rhs);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularMatrix) throw Error(ErrorCode::SingularT, "u3, u4 cannot be eliminated");
        throw;
    }
    uh[2] = u34[0];
    uh[3] = u34[1];

    const double root = std::sqrt(std::abs(prm.r));
    Vector ut(4), vt(4);
    for (std::size_t i = 0; i < 4; ++i) {
        vt[i] = root * vh[i];
        ut[i] = prm.s / root * uh[i];
    }
    const Vector u = c00 * std::span<const double>(ut);
    const Vector v = c00 * std::span<const double>(vt);

    const SymMatrix inv11 = invert_c(family[3], "11");
    const SymMatrix inv01 = invert_c(family[1], "01");
    BlockPartition p;
    p.input_arity = 2;
    p.C = family;
    p.A = Matrix(4, 2);
    p.A.set_column(0, u);
    p.A.set_column(1, v);
    p.B = SymMatrix(2);
    p.B.set(0, 0, bilinear(u, inv11, u));
    p.B.set(0, 1, bilinear(u, inv01, v));
    p.B.set(1, 1, bilinear(v, inv01, v));

    const double scale = std::max(1.0, norm(u) * norm(v) + norm(v) * norm(v));
    if (inf_norm(residuals_half_adder(p.C, u, v)) > 1e-8 * scale)
        throw Error(ErrorCode::ValidationFailed, "half-adder residuals above 1e-8");

    const gates::ReadingSpec readings[] = {{1, 4, 0.0, 1e-3}, {0, 5, 0.0, 1e-3}};
    try {
        const auto report = gates::verify_family(assembled_family(p), logic::builtin_table("half_adder"), readings);
        if (!report.pass) throw Error(ErrorCode::DegenerateKernel, "assembled matrices do not realize the half adder");
    } catch (const Error& e) {
        if (e.code() == ErrorCode::AmbiguousKernel) throw Error(ErrorCode::DegenerateKernel, e.what());
        throw;
    }
    return p;
}

// ---------------------------------------------------------------------------

namespace {

struct Projection {
    const char* name;
    Index idx;
};

const Projection kPairs[] = {{"12", {0, 1}}, {"34", {2, 3}}, {"56", {4, 5}}};
const Projection kQuads[] = {{"1234", {0, 1, 2, 3}}, {"1256", {0, 1, 4, 5}}, {"3456", {2, 3, 4, 5}}};

struct FullAdderContext {
    SymMatrix c000;
    std::vector<SymMatrix> family;
    SchurAux aux;
};

FullAdderContext make_context(const SymMatrix& c000) {
    FullAdderContext ctx;
    ctx.c000 = c000;
    ctx.family = full_adder_c_family(c000);
    ctx.aux.Q = invert_c(c000, "000");
    ctx.aux.Qprime = SymMatrix::symmetrize(ctx.aux.Q.matrix() + (ctx.family[7].matrix() - c000.matrix()));
    ctx.aux.R = SymMatrix::symmetrize(invert_t(ctx.aux.Qprime.matrix(), "123456"));
    for (const auto* group : {&kPairs, &kQuads})
        for (const auto& p : *group) ctx.aux.T_sub[p.name] = invert_t(sub(ctx.aux.Qprime.matrix(), p.idx, p.idx), p.name);
    return ctx;
}

struct Reduced {
    Vector vh = Vector(6);
    Vector uh = Vector(6);
    double lambda = 0, sigma = 0, tau = 0;
    Vector f = Vector(3);
};

Reduced reduce(const FullAdderContext& ctx, std::span<const double> x, int branch) {
    Reduced red;
    for (int k = 0; k < 3; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        red.vh[2 * kk] = x[kk];
        red.vh[2 * kk + 1] = quadratic_partner(ctx.aux.T_sub.at(kPairs[k].name), x[kk], 1.0, (branch >> k) & 1);
    }
    Matrix sys(6, 6);
    std::size_t row = 0;
    for (const auto* group : {&kPairs, &kQuads})
        for (const auto& p : *group) {
            const Vector w = ctx.aux.T_sub.at(p.name) * gather(red.vh, p.idx);
            for (std::size_t i = 0; i < p.idx.size(); ++i) sys(row, p.idx[i]) = w[i];
            ++row;
        }
    try {
        const Vector ones(6, 1.0);
        red.uh = solve(sys, ones);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularMatrix) throw Error(ErrorCode::SingularT, "u-hat system is singular");
        throw;
    }
    red.tau = bilinear(red.vh, ctx.aux.R, red.vh);
    red.sigma = bilinear(red.uh, ctx.aux.R, red.vh);
    if (std::abs(red.tau - 1.0) < 1e-14) throw Error(ErrorCode::QrsDegenerate, "tau = 1 forces t = 0");
    red.lambda = bilinear(red.uh, ctx.aux.R, red.uh) - (1.0 - red.sigma) * (1.0 - red.sigma) / (red.tau - 1.0);
    for (std::size_t k = 0; k < 3; ++k) {
        const Vector uq = gather(red.uh, kQuads[k].idx);
        red.f[k] = bilinear(uq, ctx.aux.T_sub.at(kQuads[k].name), uq) - red.lambda;
    }
    return red;
}

CandidateStatus status_of(ErrorCode code) {
    switch (code) {
    case ErrorCode::NoRealRoot: return CandidateStatus::NoRealRoot;
    case ErrorCode::SingularT: return CandidateStatus::SingularT;
    case ErrorCode::QrsDegenerate: return CandidateStatus::QrsDegenerate;
    default: return CandidateStatus::NoConvergence;
    }
}

bool usable(std::span<const double> x, double max_abs) {
    for (double xi : x)
        if (!std::isfinite(xi) || std::abs(xi) > max_abs) return false;
    return true;
}

void finish_candidate(const FullAdderContext& ctx, const Reduced& red, const FullAdderOptions& opt,
                      FullAdderCandidate& cand) {
    SchurAux aux = ctx.aux;
    aux.lambda = red.lambda;
    aux.sigma = red.sigma;
    aux.tau = red.tau;
    aux.r = 1.0;
    aux.t = red.tau - 1.0;
    if (std::abs(1.0 - red.sigma) < 1e-14) {
        cand.status = CandidateStatus::QrsDegenerate;
        cand.message = "sigma = 1";
        return;
    }
    aux.s = aux.t / (1.0 - red.sigma);
    aux.q = red.lambda * aux.t * aux.t / ((1.0 - red.sigma) * (1.0 - red.sigma));
    const double det_s = aux.q * aux.r - aux.s * aux.s;
    if (std::abs(det_s) <= 1e-10 * std::max(std::abs(aux.q * aux.r), aux.s * aux.s)) {
        cand.status = CandidateStatus::QrsDegenerate;
        cand.message = "qr - s^2 vanishes";
        cand.aux = aux;
        return;
    }

    Vector ut(6), vt(6);
    for (std::size_t i = 0; i < 6; ++i) {
        ut[i] = aux.s * red.uh[i];
        vt[i] = red.vh[i];
    }
    const Vector u = ctx.c000 * std::span<const double>(ut);
    const Vector v = ctx.c000 * std::span<const double>(vt);

    BlockPartition p;
    p.input_arity = 3;
    p.C = ctx.family;
    p.A = Matrix(6, 2);
    p.A.set_column(0, u);
    p.A.set_column(1, v);
    const SymMatrix inv011 = invert_c(ctx.family[3], "011");
    const SymMatrix inv001 = invert_c(ctx.family[1], "001");
    p.B = SymMatrix(2);
    p.B.set(0, 0, bilinear(u, inv011, u));
    p.B.set(0, 1, bilinear(u, inv001, v));
    p.B.set(1, 1, bilinear(v, inv001, v));
    cand.full_residual_norm = inf_norm(residuals_full_adder(p.C, u, v));
    cand.aux = aux;
    cand.partition = p;

    if (cand.full_residual_norm >= 1e-8) {
        cand.status = CandidateStatus::ValidationFailed;
        cand.message = "assembled residuals above 1e-8";
        return;
    }
    // Carry (u) is read on state 7, sum (v) on state 8.
    const gates::ReadingSpec readings[] = {{1, 6, 0.0, 1e-3}, {0, 7, 0.0, 1e-3}};
    try {
        const auto report =
            gates::verify_family(assembled_family(p), logic::builtin_table("full_adder"), readings, opt.verify);
        cand.status = report.pass ? CandidateStatus::Valid : CandidateStatus::ValidationFailed;
        if (!report.pass) cand.message = "kernel or weight pattern differs from the full adder";
    } catch (const Error& e) {
        cand.status = CandidateStatus::ValidationFailed;
        cand.message = e.what();
    }
}

FullAdderCandidate run_newton(const FullAdderContext& ctx, std::span<const double> x0, int branch,
                              const FullAdderOptions& opt) {
    FullAdderCandidate cand;
    cand.branch = branch;
    cand.x0.assign(x0.begin(), x0.end());
    Vector x = cand.x0;
    Reduced red;
    try {
        red = reduce(ctx, x, branch);
    } catch (const Error& e) {
        cand.x = x;
        cand.status = status_of(e.code());
        cand.message = e.what();
        cand.residual_norm = std::numeric_limits<double>::infinity();
        return cand;
    }

    const double h = opt.fd_step;
    for (int it = 0;; ++it) {
        cand.iterations = it;
        cand.residual_norm = inf_norm(red.f);
        if (cand.residual_norm < opt.tol) break;
        if (it >= opt.max_iterations) {
            cand.x = x;
            cand.status = CandidateStatus::NoConvergence;
            cand.message = "iteration limit reached";
            return cand;
        }
        Matrix jac(3, 3);
        try {
            for (std::size_t j = 0; j < 3; ++j) {
                Vector xp = x, xm = x;
                xp[j] += h;
                xm[j] -= h;
                const Vector fp = reduce(ctx, xp, branch).f;
                const Vector fm = reduce(ctx, xm, branch).f;
                for (std::size_t i = 0; i < 3; ++i) jac(i, j) = (fp[i] - fm[i]) / (2.0 * h);
            }
        } catch (const Error& e) {
            cand.x = x;
            cand.status = CandidateStatus::NoConvergence;
            cand.message = std::string("Jacobian evaluation failed: ") + e.what();
            return cand;
        }
        Vector dx;
        try {
            Vector minus_f = red.f;
            for (auto& fi : minus_f) fi = -fi;
            dx = solve(jac, minus_f);
        } catch (const Error&) {
            cand.x = x;
            cand.status = CandidateStatus::NoConvergence;
            cand.message = "singular Jacobian";
            return cand;
        }
        // Damped step: halve until the residual decreases and stays on the branch.
        bool accepted = false;
        double step = 1.0;
        for (int halving = 0; halving < 30 && !accepted; ++halving, step *= 0.5) {
            Vector trial = x;
            for (std::size_t i = 0; i < 3; ++i) trial[i] += step * dx[i];
            if (!usable(trial, opt.max_abs_x)) continue;
            try {
                Reduced next = reduce(ctx, trial, branch);
                if (inf_norm(next.f) < cand.residual_norm) {
                    x = trial;
                    red = std::move(next);
                    accepted = true;
                }
            } catch (const Error&) {
            }
        }
        if (!accepted) {
            cand.x = x;
            cand.status = CandidateStatus::NoConvergence;
            cand.message = "line search stalled";
            return cand;
        }
    }
    cand.x = x;
    if (!usable(x, opt.max_abs_x)) {
        cand.status = CandidateStatus::NoConvergence;
        cand.message = "diverged";
        return cand;
    }
    finish_candidate(ctx, red, opt, cand);
    return cand;
}

} // namespace

std::string_view status_name(CandidateStatus s) {
    switch (s) {
    case CandidateStatus::Valid: return "valid";
    case CandidateStatus::NoConvergence: return "no_convergence";
    case CandidateStatus::NoRealRoot: return "no_real_root";
    case CandidateStatus::SingularT: return "singular_t";
    case CandidateStatus::QrsDegenerate: return "qrs_degenerate";
    case CandidateStatus::ValidationFailed: return "validation_failed";
    }
    return "unknown";
}

Vector full_adder_reduced_residuals(const SymMatrix& c000, std::span<const double> x, int branch) {
    if (x.size() != 3) throw Error(ErrorCode::BadInput, "reduced system has three unknowns");
    return reduce(make_context(c000), x, branch).f;
}

FullAdderCandidate solve_full_adder_from(const SymMatrix& c000, std::span<const double> x0, int branch,
                                         const FullAdderOptions& opt) {
    if (x0.size() != 3) throw Error(ErrorCode::BadInput, "seed must have three components");
    if (branch < 0 || branch > 7) throw Error(ErrorCode::BadInput, "branch must be in [0, 7]");
    return run_newton(make_context(c000), x0, branch, opt);
}

std::vector<FullAdderCandidate> solve_full_adder(const SymMatrix& c000, const FullAdderOptions& opt) {
    if (opt.seeds < 1) throw Error(ErrorCode::BadInput, "need at least one seed");
    const FullAdderContext ctx = make_context(c000);
    std::mt19937_64 rng(opt.rng_seed);
    std::uniform_real_distribution<double> dist(-opt.seed_range, opt.seed_range);
    std::vector<FullAdderCandidate> out;
    out.reserve(static_cast<std::size_t>(opt.seeds) * 8);
    for (int s = 0; s < opt.seeds; ++s) {
        const double x0[] = {dist(rng), dist(rng), dist(rng)};
        for (int branch = 0; branch < 8; ++branch) {
            FullAdderCandidate cand = run_newton(ctx, x0, branch, opt);
            cand.seed_index = s;
            out.push_back(std::move(cand));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

ConstraintCount count_constraints(int n) {
    const logic::TruthTable t = logic::adder_table(n);
    const int l = t.output_arity();
    ConstraintCount cc;
    std::map<std::uint32_t, int> mult;
    for (std::uint32_t i = 0; i < t.row_count(); ++i) ++mult[t.row(i)];
    for (const auto& [out, m] : mult) cc.class_multiplicity[logic::bit_string(out, l)] = m;

    cc.symmetry = l * (l - 1) / 2;
    for (const auto& [out, m] : mult) {
        if (out == 0) continue;
        if (std::popcount(out) >= 2) cc.output_compatibility += l;
        cc.input_compatibility += l * (m - 1);
    }
    cc.equations = cc.symmetry + cc.output_compatibility + cc.input_compatibility;
    const int inputs = 2 * n + 1;
    const int m = 2 * inputs;
    cc.variables = m * (n + 1) + m * (m + 1) / 2 - inputs;
    return cc;
}

} // namespace qhc::schur
