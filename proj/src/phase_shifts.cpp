#include "fdscat/phase_shifts.hpp"

#include "fdscat/error.hpp"
#include "fdscat/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fdscat
{

namespace
{

constexpr double pi = std::numbers::pi;

/// Representative of x mod pi in (-pi/2, pi/2].
double wrap_half_pi(double x)
{
    double y = x - pi * std::round(x / pi);
    if (y <= -pi / 2) y += pi;
    return y;
}

void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

} // namespace

//---------------------------------------------------------------------------//
// PotentialModel
//---------------------------------------------------------------------------//

PotentialModel PotentialModel::hard_sphere(double a)
{
    require_positive(a, "hard sphere radius a");
    PotentialModel m;
    m.kind_ = PotentialKind::hard_sphere;
    m.a_ = a;
    return m;
}

PotentialModel PotentialModel::square_well(double a, double depth)
{
    require_positive(a, "well radius a");
    if (!std::isfinite(depth)) throw DomainError("well depth must be finite");
    PotentialModel m;
    m.kind_ = PotentialKind::square_well;
    m.a_ = a;
    m.depth_ = depth;
    return m;
}

PotentialModel PotentialModel::tabulated(std::vector<double> r, std::vector<double> v)
{
    if (r.size() != v.size() || r.size() < 3) throw InvariantError("tabulated potential needs >= 3 (r, V) samples");
    if (r.front() < 0.0) throw InvariantError("tabulated potential: negative radius");
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (!(r[i] > r[i - 1])) throw InvariantError("tabulated potential: radial grid must be strictly increasing");
    }
    double vmax = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) throw InvariantError("tabulated potential: non-finite sample");
        vmax = std::max(vmax, std::abs(x));
    }
    if (vmax == 0.0) throw InvariantError("tabulated potential is identically zero");
    const double cut = 1e-12 * vmax;
    if (!(std::abs(v.back()) < cut)) {
        throw InvariantError("tabulated potential must reach |V| < 1e-12 max|V| at the last sample");
    }
    std::size_t last = v.size() - 1;
    while (last > 0 && std::abs(v[last - 1]) < cut) --last;

    PotentialModel m;
    m.kind_ = PotentialKind::tabulated_radial;
    m.a_ = r[last];
    m.depth_ = vmax;

    // natural cubic spline second derivatives
    const std::size_t n = r.size();
    std::vector<double> diag(n, 1.0), upper(n, 0.0), rhs(n, 0.0), lower(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = r[i] - r[i - 1], h1 = r[i + 1] - r[i];
        lower[i] = h0 / 6.0;
        diag[i] = (h0 + h1) / 3.0;
        upper[i] = h1 / 6.0;
        rhs[i] = (v[i + 1] - v[i]) / h1 - (v[i] - v[i - 1]) / h0;
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    m.m_.assign(n, 0.0);
    m.m_[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) m.m_[i] = (rhs[i] - upper[i] * m.m_[i + 1]) / diag[i];

    m.r_ = std::move(r);
    m.v_ = std::move(v);
    return m;
}

double PotentialModel::spline(double r) const
{
    if (r >= r_.back()) return 0.0;
    if (r <= r_.front()) {
        // power-law continuation toward the origin
        const double r0 = r_[0], r1 = r_[1], v0 = v_[0], v1 = v_[1];
        if (r0 > 0.0 && v0 != 0.0 && v1 != 0.0 && (v0 > 0) == (v1 > 0) && std::abs(v0) > std::abs(v1)) {
            const double p = std::log(std::abs(v0 / v1)) / std::log(r1 / r0);
            return v0 * std::pow(r0 / r, p);
        }
        return v0;
    }
    const auto it = std::upper_bound(r_.begin(), r_.end(), r);
    const std::size_t i = static_cast<std::size_t>(it - r_.begin()) - 1;
    const double h = r_[i + 1] - r_[i];
    const double t = (r_[i + 1] - r) / h, u = (r - r_[i]) / h;
    return t * v_[i] + u * v_[i + 1] + ((t * t * t - t) * m_[i] + (u * u * u - u) * m_[i + 1]) * h * h / 6.0;
}

double PotentialModel::operator()(double r, int side) const
{
    switch (kind_) {
    case PotentialKind::hard_sphere:
        throw DomainError("hard sphere has no finite potential; use hard_sphere_shifts");
    case PotentialKind::square_well:
        if (r < a_) return -depth_;
        if (r > a_) return 0.0;
        return side < 0 ? -depth_ : side > 0 ? 0.0 : -0.5 * depth_;
    case PotentialKind::tabulated_radial:
        return spline(r);
    }
    return 0.0;
}

std::vector<double> PotentialModel::discontinuities() const
{
    if (kind_ == PotentialKind::square_well) return {a_};
    return {};
}

double PotentialModel::max_abs() const
{
    if (kind_ == PotentialKind::hard_sphere) return std::numeric_limits<double>::infinity();
    return std::abs(depth_);
}

//---------------------------------------------------------------------------//
// PhaseShiftTable
//---------------------------------------------------------------------------//

void PhaseShiftTable::validate() const
{
    if (!(k > 0.0) || !std::isfinite(k)) throw InvariantError("phase-shift table: k must be positive");
    if (!(a_eff > 0.0) || !std::isfinite(a_eff)) throw InvariantError("phase-shift table: a_eff must be positive");
    if (shifts.empty()) throw InvariantError("phase-shift table: shifts array is empty");
    for (std::size_t l = 0; l < shifts.size(); ++l) {
        if (!std::isfinite(shifts[l])) {
            throw InvariantError("phase-shift table: non-finite shift at l = " + std::to_string(l));
        }
    }
}

bool PhaseShiftTable::tail_converged(double tol) const { return !shifts.empty() && std::abs(shifts.back()) < tol; }

void fix_branches(std::vector<double>& shifts)
{
    if (shifts.empty()) return;
    shifts.back() = wrap_half_pi(shifts.back());
    for (std::size_t l = shifts.size() - 1; l-- > 0;) {
        const double ref = shifts[l + 1];
        shifts[l] = ref + wrap_half_pi(shifts[l] - ref);
    }
}

//---------------------------------------------------------------------------//
// Analytic models
//---------------------------------------------------------------------------//

PhaseShiftTable hard_sphere_shifts(double k, double a, int lmax)
{
    require_positive(k, "k");
    require_positive(a, "a");
    if (lmax < 1) throw DomainError("hard_sphere_shifts: L must be >= 1");
    const auto t = spherical_bessel_table(lmax, k * a);
    PhaseShiftTable out{k, a, std::vector<double>(lmax + 1)};
    for (int l = 0; l <= lmax; ++l) {
        // tan delta_l = j_l(ka) / y_l(ka)
        out.shifts[l] = std::isfinite(t.y[l]) ? std::atan2(t.j[l], t.y[l]) : 0.0;
    }
    fix_branches(out.shifts);
    return out;
}

PhaseShiftTable square_well_shifts(double k, double a, double depth, int lmax, std::vector<int>* near_pole)
{
    require_positive(k, "k");
    require_positive(a, "a");
    require_positive(depth, "V0");
    if (lmax < 1) throw DomainError("square_well_shifts: L must be >= 1");
    const double kin = std::sqrt(k * k + depth);
    const auto out_t = spherical_bessel_table(lmax, k * a);
    const auto in_t = spherical_bessel_table(lmax, kin * a);
    PhaseShiftTable out{k, a, std::vector<double>(lmax + 1)};
    for (int l = 0; l <= lmax; ++l) {
        const double jin = in_t.j[l], djin = in_t.dj[l];
        if (near_pole && std::abs(jin) < 1e-8 * std::abs(djin)) near_pole->push_back(l);
        // tan delta = [k j' - gamma j] / [k y' - gamma y], gamma = k' j_in'/j_in, times j_in
        const double num = k * out_t.dj[l] * jin - kin * djin * out_t.j[l];
        const double den = k * out_t.dy[l] * jin - kin * djin * out_t.y[l];
        out.shifts[l] = std::isfinite(den) ? std::atan2(num, den) : 0.0;
    }
    fix_branches(out.shifts);
    return out;
}

//---------------------------------------------------------------------------//
// Numerov
//---------------------------------------------------------------------------//

namespace
{

void check_origin(const PotentialModel& model)
{
    if (model.kind() != PotentialKind::tabulated_radial) return;
    const auto r = model.sample_r();
    const auto v = model.sample_v();
    if (r[0] == 0.0) return; // finite value at the origin
    if (v[0] == 0.0 || v[1] == 0.0 || (v[0] > 0) != (v[1] > 0) || std::abs(v[0]) <= std::abs(v[1])) return;
    const double p = std::log(std::abs(v[0] / v[1])) / std::log(r[1] / r[0]);
    if (p > 2.0 + 1e-9) {
        throw SingularPotentialError("potential diverges as r^-" + std::to_string(p) +
                                     " at the origin (faster than 1/r^2)");
    }
}

struct NumerovGrid
{
    double h = 0;
    int n = 0;                    // last node index
    std::vector<double> vl, vm, vr; // one-sided and mean V at each node
    std::vector<char> jump;
};

NumerovGrid make_grid(const PotentialModel& model, double h, double r_max)
{
    NumerovGrid g;
    g.h = h;
    g.n = static_cast<int>(std::ceil(r_max / h - 1e-9));
    g.vl.resize(g.n + 1);
    g.vm.resize(g.n + 1);
    g.vr.resize(g.n + 1);
    g.jump.assign(g.n + 1, 0);
    for (int i = 1; i <= g.n; ++i) {
        const double r = i * h;
        g.vl[i] = model(r, -1);
        g.vm[i] = model(r, 0);
        g.vr[i] = model(r, +1);
        g.jump[i] = g.vl[i] != g.vr[i];
    }
    return g;
}

/// Outward Numerov integration in summed form: with w = (1 - h^2 f/12) u taken
/// with one-sided f at a jump node, D_n = wL_{n+1} - wR_n obeys
/// D_n = D_{n-1} + h^2 fM_n u_n (+ jump correction), which keeps round-off
/// linear in the number of steps. Calls visit(i, u_i, u_{i-1}, u_{i-2}) at
/// every node i >= 2 (the three values share one scale).
template <class Visit>
void numerov_sweep(const NumerovGrid& g, int l, double k2, double v0, Visit&& visit)
{
    const double h = g.h, h2 = h * h;
    const double cent = static_cast<double>(l) * (l + 1);
    auto f = [&](const std::vector<double>& v, int i) { return v[i] + cent / ((i * h) * (i * h)) - k2; };

    // regular series u ~ r^{l+1} (1 + c2 r^2), scaled so u_1 = 1
    const double c2 = (v0 - k2) / (2.0 * (2 * l + 3));
    double um2 = 0.0;
    double um1 = 1.0;
    double u = std::pow(2.0, l + 1) * (1.0 + 4.0 * c2 * h2) / (1.0 + c2 * h2);
    visit(2, u, um1, um2);
    double d = (1.0 - h2 * f(g.vl, 2) / 12.0) * u - (1.0 - h2 * f(g.vr, 1) / 12.0) * um1;
    for (int i = 2; i < g.n; ++i) {
        d += h2 * f(g.vm, i) * u;
        if (g.jump[i]) {
            // u''' jumps by (f+ - f-) u'; u' one-sided from the left
            const double du = (3.0 * u - 4.0 * um1 + um2) / (2.0 * h);
            d += h2 * h / 12.0 * (g.vr[i] - g.vl[i]) * du;
        }
        const double w_next = (1.0 - h2 * f(g.vr, i) / 12.0) * u + d;
        um2 = um1;
        um1 = u;
        u = w_next / (1.0 - h2 * f(g.vl, i + 1) / 12.0);
        if (std::abs(u) > 1e250) {
            u *= 1e-250;
            um1 *= 1e-250;
            um2 *= 1e-250;
            d *= 1e-250;
        }
        visit(i + 1, u, um1, um2);
    }
}

/// Raw shifts (mod pi) at step h.
std::vector<double> numerov_pass(const PotentialModel& model, double k, int lmax, double h, double r_max)
{
    const auto g = make_grid(model, h, r_max);
    const double r1 = (g.n - 1) * h, r2 = g.n * h;
    const auto t1 = spherical_bessel_table(lmax, k * r1);
    const auto t2 = spherical_bessel_table(lmax, k * r2);
    const double v0 = model(0.5 * h);
    std::vector<double> out(lmax + 1);
    for (int l = 0; l <= lmax; ++l) {
        double u1 = 0.0, u2 = 0.0;
        numerov_sweep(g, l, k * k, v0, [&](int i, double ui, double ui1, double) {
            if (i == g.n) {
                u1 = ui1;
                u2 = ui;
            }
        });
        // u ~ psi_l cos(delta) - (x y_l) sin(delta)
        const double j1 = k * r1 * t1.j[l], j2 = k * r2 * t2.j[l];
        const double n1 = k * r1 * t1.y[l], n2 = k * r2 * t2.y[l];
        out[l] = std::atan2(u2 * j1 - u1 * j2, u2 * n1 - u1 * n2);
    }
    return out;
}

} // namespace

PhaseShiftTable numerov_shifts(const PotentialModel& model, double k, int lmax, NumerovOptions opts)
{
    require_positive(k, "k");
    if (lmax < 1) throw DomainError("numerov_shifts: L must be >= 1");
    if (model.kind() == PotentialKind::hard_sphere) {
        throw DomainError("numerov_shifts: hard sphere has no finite potential; use hard_sphere_shifts");
    }
    check_origin(model);

    const double a = model.range();
    const double h_limit = std::min(0.01 / k, a / 200.0);
    double h = opts.h;
    if (h == 0.0) {
        // resolve the local wavelength inside strong potentials too
        h = std::min(h_limit, 0.05 / std::sqrt(model.max_abs() + k * k));
    } else if (!(h > 0.0) || h > h_limit * (1.0 + 1e-12)) {
        throw DomainError("numerov_shifts: step h must be in (0, min(0.01/k, a/200)]");
    }
    // put every discontinuity on a node
    h = a / std::ceil(a / h - 1e-9);
    double r_max = opts.r_max > 0.0 ? opts.r_max : a + 4.0 / k;
    if (r_max <= a) throw DomainError("numerov_shifts: r_max must lie beyond the potential support");
    r_max = h * std::ceil(r_max / h - 1e-9);

    const auto d1 = numerov_pass(model, k, lmax, h, r_max);
    const auto d2 = numerov_pass(model, k, lmax, h / 2, r_max);
    const auto d4 = numerov_pass(model, k, lmax, h / 4, r_max);

    PhaseShiftTable out{k, a, std::vector<double>(lmax + 1)};
    for (int l = 0; l <= lmax; ++l) {
        const double e12 = d2[l] + wrap_half_pi(d2[l] - d1[l]) / 15.0;
        const double e24 = d4[l] + wrap_half_pi(d4[l] - d2[l]) / 15.0;
        const double gap = std::abs(wrap_half_pi(e24 - e12));
        if (gap > 1e-6) {
            throw ConvergenceError("numerov_shifts: Richardson estimates for l = " + std::to_string(l) +
                                   " differ by " + std::to_string(gap));
        }
        out.shifts[l] = e24;
    }
    fix_branches(out.shifts);
    return out;
}

int zero_energy_nodes(const PotentialModel& model, int l)
{
    if (model.kind() == PotentialKind::hard_sphere) return 0;
    check_origin(model);
    const double a = model.range();
    double h = std::min(a / 2000.0, 0.05 / std::sqrt(model.max_abs()));
    h = a / std::ceil(a / h - 1e-9);
    const auto g = make_grid(model, h, a + 20.0 * h);

    int nodes = 0;
    double u = 0.0, um1 = 0.0, um2 = 0.0;
    numerov_sweep(g, l, 0.0, model(0.5 * h), [&](int, double ui, double ui1, double ui2) {
        if ((ui > 0) != (ui1 > 0)) ++nodes;
        u = ui;
        um1 = ui1;
        um2 = ui2;
    });
    // free exterior solution alpha r^{l+1} + beta r^{-l}: one more node if -beta/alpha > r^{2l+1}
    const double r = g.n * h;
    const double uu = u;
    const double du = (3.0 * u - 4.0 * um1 + um2) / (2.0 * h);
    const double alpha = (l * std::pow(r, -l - 1) * uu + std::pow(r, -l) * du) / (2 * l + 1);
    const double beta = ((l + 1) * std::pow(r, l) * uu - std::pow(r, l + 1) * du) / (2 * l + 1);
    if (alpha != 0.0 && -beta / alpha > std::pow(r, 2 * l + 1)) ++nodes;
    return nodes;
}

} // namespace fdscat
