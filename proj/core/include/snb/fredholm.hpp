#pragma once

#include "snb/specfun.hpp"
#include "snb/symmetry.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace snb {

using complex = std::complex<double>;

enum class KernelVariant {
    full_sine,  // S(x - y) with S(u) = sin(pi u)/(pi u)
    even_sine,  // S(x - y) + S(x + y)
    odd_sine,   // S(x - y) - S(x + y)
};

/// A sine-family kernel restricted to (0, interval_length).
struct KernelSpec {
    KernelVariant variant = KernelVariant::full_sine;
    double interval_length = 0.0;
};

double sine_kernel(double u);
double kernel_value(KernelVariant variant, double x, double y);

/// How det(I - z K) is evaluated on the contour.
enum class DeterminantMethod {
    spectral,  // eigenvalues of the symmetric Nystrom matrix, then a product
    lu,        // one complex LU factorisation per contour point
};

/// Discretisation parameters shared by every Fredholm evaluation.
///
/// The quadrature order scales with the length of the interval the kernel
/// acts on; contour points scale with the largest coefficient requested.
struct ResolutionPolicy {
    std::size_t min_order = 48;
    double order_per_unit_length = 6.0;
    std::optional<std::size_t> fixed_order;

    double contour_radius = 1.0;
    std::size_t min_contour_points = 128;
    std::optional<std::size_t> fixed_contour_points;

    DeterminantMethod method = DeterminantMethod::spectral;

    double defect_tolerance = 1e-8;
    double residue_tolerance = 1e-11;

    std::size_t order_for(double interval_length) const;
    std::size_t contour_points_for(std::size_t lmax) const;

    /// Stable text key of every parameter that affects computed values.
    std::string fingerprint() const;

    /// Throws ArgumentError on non-positive sizes or a radius outside (0, 2].
    void validate() const;
};

/// Number of counting probabilities needed so that the mass beyond lmax is
/// negligible for an interval of length s.
std::size_t lmax_for(double s);

/// Symmetrised Nystrom matrix W^{1/2} K W^{1/2} on the rule's nodes.
Eigen::MatrixXd nystrom_matrix(const KernelSpec& kernel, const QuadratureRule& rule);

enum class WeightForm {
    symmetric,  // det(I - z W^{1/2} K W^{1/2})
    right,      // det(I - z K W)
};

/// det(I - z K) discretised on `rule`, by partial-pivot LU.
complex nystrom_determinant(const KernelSpec& kernel, complex z, const QuadratureRule& rule,
                            WeightForm form = WeightForm::symmetric);

/// Eigenvalues of the symmetric Nystrom matrix, ascending.
std::vector<double> nystrom_eigenvalues(const KernelSpec& kernel, const QuadratureRule& rule);

/// Samples of det(I - z K) on the circle |z - 1| = radius.
struct DeterminantGrid {
    KernelSpec kernel;
    QuadratureRule rule;
    double radius = 1.0;
    std::vector<std::pair<complex, complex>> samples;  // (z, det)
};

/// Samples `points` equally spaced contour nodes z_k = 1 + radius e^{2 pi i k / points}.
DeterminantGrid sample_determinant(const KernelSpec& kernel, const QuadratureRule& rule,
                                   double radius, std::size_t points,
                                   DeterminantMethod method = DeterminantMethod::spectral);

struct ContourExtraction {
    std::vector<double> coefficients;  // (-1)^l / l! f^{(l)}(1), l = 0..lmax
    double imag_residue = 0.0;         // largest discarded imaginary part
};

/// Trapezoidal Cauchy-integral extraction of the scaled Taylor coefficients
/// at z = 1. Throws NumericalFailure when the discarded imaginary part
/// exceeds `residue_tolerance`.
ContourExtraction contour_derivatives(const DeterminantGrid& grid, std::size_t lmax,
                                      double residue_tolerance = 1e-11);

/// E(0..lmax) of a single kernel, i.e. the generating-function coefficients
/// of det(I - z K) for that kernel.
ContourExtraction kernel_counting_coefficients(const KernelSpec& kernel, std::size_t lmax,
                                               const ResolutionPolicy& policy);

struct CountingProbabilities {
    SymmetryClass beta = SymmetryClass::unitary;
    double s = 0.0;
    std::vector<double> values;  // E_beta(l; s), l = 0..lmax, raw (unclamped)
    double truncation_defect = 0.0;
    double imag_residue = 0.0;
};

/// E_beta(l; s) for l = 0..lmax. beta = 2 uses the sine kernel on (0, s);
/// beta = 1 and 4 are assembled from the even/odd kernels:
///   E_+(n) = E_1(2n) + E_1(2n-1),  E_-(n) = E_1(2n) + E_1(2n+1)   on (0, s/2),
///   E_4(n; s) = (E_+(n; 2s) + E_-(n; 2s)) / 2.
/// Throws ResolutionFailure when |1 - sum E| exceeds the policy tolerance.
CountingProbabilities counting_probabilities(SymmetryClass beta, double s, std::size_t lmax,
                                             const ResolutionPolicy& policy = {});

} // namespace snb
