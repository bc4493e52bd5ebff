#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fdscat
{

enum class PotentialKind
{
    hard_sphere,
    square_well,
    tabulated_radial
};

/// Spherically symmetric potential in units of 2M/hbar^2 (inverse length
/// squared). Square wells are V(r) = -depth for r < a; a negative depth gives
/// a repulsive core.
class PotentialModel
{
  public:
    static PotentialModel hard_sphere(double a);
    static PotentialModel square_well(double a, double depth);
    /// Natural cubic spline through (r, V). The grid must be strictly
    /// increasing and end where |V| < 1e-12 max|V|; V = 0 beyond it.
    static PotentialModel tabulated(std::vector<double> r, std::vector<double> v);

    PotentialKind kind() const noexcept { return kind_; }
    /// Effective support radius: V = 0 (to 1e-12 max|V|) for r > range().
    double range() const noexcept { return a_; }
    double depth() const noexcept { return depth_; }
    std::span<const double> sample_r() const noexcept { return r_; }
    std::span<const double> sample_v() const noexcept { return v_; }

    /// V(r). `side` picks the one-sided limit at a discontinuity: -1 left,
    /// +1 right, 0 the mean. Hard spheres have no finite V and throw.
    double operator()(double r, int side = 0) const;
    /// Radii where V jumps.
    std::vector<double> discontinuities() const;
    /// Largest |V| on the support.
    double max_abs() const;

  private:
    PotentialModel() = default;
    double spline(double r) const;

    PotentialKind kind_ = PotentialKind::square_well;
    double a_ = 0;
    double depth_ = 0;
    std::vector<double> r_, v_, m_; // samples and spline second derivatives
};

/// Wavenumber k with real shifts delta_0..delta_L (radians).
struct PhaseShiftTable
{
    double k = 0;
    double a_eff = 0;
    std::vector<double> shifts;

    int lmax() const noexcept { return static_cast<int>(shifts.size()) - 1; }
    /// Throws InvariantError on empty or non-finite shifts, k <= 0, a_eff <= 0.
    void validate() const;
    /// |delta_L| < tol: the partial-wave series is closed at the table edge.
    bool tail_converged(double tol = 1e-8) const;

    friend bool operator==(const PhaseShiftTable&, const PhaseShiftTable&) = default;
};

/// Reduces raw shifts (known mod pi) to a unique table: delta_L is taken in
/// (-pi/2, pi/2] and each lower delta_l is the representative nearest to
/// delta_{l+1}.
void fix_branches(std::vector<double>& shifts);

PhaseShiftTable hard_sphere_shifts(double k, double a, int lmax);

/// Attractive square well. Channels whose interior j_l(k'a) nearly vanishes
/// are appended to `near_pole` when given; the multiplied-through matching
/// formula stays finite there.
PhaseShiftTable square_well_shifts(double k, double a, double depth, int lmax, std::vector<int>* near_pole = nullptr);

struct NumerovOptions
{
    double r_max = 0; ///< 0: support + 4/k
    double h = 0;     ///< 0: automatic; otherwise must be <= min(0.01/k, a/200)
};

/// Integrates u'' = [V + l(l+1)/r^2 - k^2] u outward with the Numerov scheme
/// at steps h, h/2, h/4 and Richardson-extrapolates delta_l. Throws
/// ConvergenceError when the two extrapolants differ by more than 1e-6 and
/// SingularPotentialError for V more singular than 1/r^2.
PhaseShiftTable numerov_shifts(const PotentialModel& model, double k, int lmax, NumerovOptions opts = {});

/// Nodes in (0, inf) of the regular zero-energy solution for channel l;
/// equals the number of bound states in that channel.
int zero_energy_nodes(const PotentialModel& model, int l = 0);

//---------------------------------------------------------------------------//
// Text format (see docs/file-formats.md)
//---------------------------------------------------------------------------//

std::string format_table(const PhaseShiftTable& table);
/// Throws ParseError with line/field diagnostics, InvariantError on bad values.
PhaseShiftTable parse_table(std::string_view text);

void write_table(const std::filesystem::path& path, const PhaseShiftTable& table);
PhaseShiftTable read_table(const std::filesystem::path& path);

} // namespace fdscat
