#include "snb/fredholm.hpp"

#include "snb/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace snb {

using constants::pi;

SymmetryClass symmetry_from_beta(int beta)
{
    switch (beta) {
    case 1: return SymmetryClass::orthogonal;
    case 2: return SymmetryClass::unitary;
    case 4: return SymmetryClass::symplectic;
    default: throw ArgumentError("beta must be 1, 2 or 4 (got " + std::to_string(beta) + ")");
    }
}

std::string to_string(SymmetryClass c) { return std::to_string(beta_value(c)); }

double sine_kernel(double u)
{
    if (u == 0.0)
        return 1.0;
    const double x = pi * u;
    if (std::abs(x) < 1e-4)
        return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
    return std::sin(x) / x;
}

double kernel_value(KernelVariant variant, double x, double y)
{
    switch (variant) {
    case KernelVariant::full_sine: return sine_kernel(x - y);
    case KernelVariant::even_sine: return sine_kernel(x - y) + sine_kernel(x + y);
    case KernelVariant::odd_sine: return sine_kernel(x - y) - sine_kernel(x + y);
    }
    return 0.0;
}

std::size_t ResolutionPolicy::order_for(double interval_length) const
{
    if (fixed_order)
        return *fixed_order;
    const auto scaled = static_cast<std::size_t>(std::ceil(order_per_unit_length * interval_length));
    return std::max(min_order, scaled);
}

std::size_t ResolutionPolicy::contour_points_for(std::size_t lmax) const
{
    if (fixed_contour_points)
        return *fixed_contour_points;
    return std::max(min_contour_points, std::bit_ceil(std::max<std::size_t>(1, 8 * lmax)));
}

std::string ResolutionPolicy::fingerprint() const
{
    std::ostringstream os;
    os.precision(17);
    os << "order=";
    if (fixed_order)
        os << *fixed_order;
    else
        os << "max(" << min_order << ",ceil(" << order_per_unit_length << "*len))";
    os << ";radius=" << contour_radius << ";points=";
    if (fixed_contour_points)
        os << *fixed_contour_points;
    else
        os << "max(" << min_contour_points << ",pow2(8*lmax))";
    os << ";method=" << (method == DeterminantMethod::spectral ? "spectral" : "lu");
    return os.str();
}

void ResolutionPolicy::validate() const
{
    if (min_order == 0 || (fixed_order && *fixed_order == 0))
        throw ArgumentError("quadrature order must be positive");
    if (!(order_per_unit_length >= 0))
        throw ArgumentError("order_per_unit_length must be non-negative");
    if (!(contour_radius > 0 && contour_radius <= 2))
        throw ArgumentError("contour radius must lie in (0, 2]");
    if (min_contour_points == 0 || (fixed_contour_points && *fixed_contour_points == 0))
        throw ArgumentError("contour point count must be positive");
}

std::size_t lmax_for(double s)
{
    return static_cast<std::size_t>(std::ceil(s + 10.0 + 5.0 * std::sqrt(std::log(2.0 + s))));
}

Eigen::MatrixXd nystrom_matrix(const KernelSpec& kernel, const QuadratureRule& rule)
{
    const auto n = static_cast<Eigen::Index>(rule.order);
    Eigen::VectorXd sw(n);
    for (Eigen::Index i = 0; i < n; ++i)
        sw(i) = std::sqrt(rule.weights[i]);
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = j; i < n; ++i) {
            const double v = sw(i) * kernel_value(kernel.variant, rule.nodes[i], rule.nodes[j]) * sw(j);
            a(i, j) = v;
            a(j, i) = v;
        }
    }
    return a;
}

namespace {

void check_rule(const KernelSpec& kernel, const QuadratureRule& rule)
{
    if (!(kernel.interval_length > 0))
        throw ArgumentError("kernel interval length must be positive");
    const double tol = 1e-12 * std::max(1.0, kernel.interval_length);
    if (std::abs(rule.a) > tol || std::abs(rule.b - kernel.interval_length) > tol)
        throw ArgumentError("quadrature rule does not cover (0, interval_length)");
}

template <class Matrix>
complex lu_determinant(const Matrix& m)
{
    Eigen::PartialPivLU<Matrix> lu(m);
    const auto& f = lu.matrixLU();
    for (Eigen::Index i = 0; i < f.rows(); ++i) {
        if (std::abs(f(i, i)) == 0.0)
            throw NumericalFailure("nystrom_determinant: singular pivot");
    }
    const complex det = lu.determinant();
    if (!std::isfinite(det.real()) || !std::isfinite(det.imag()))
        throw NumericalFailure("nystrom_determinant: non-finite determinant");
    return det;
}

} // namespace

complex nystrom_determinant(const KernelSpec& kernel, complex z, const QuadratureRule& rule,
                            WeightForm form)
{
    check_rule(kernel, rule);
    const auto n = static_cast<Eigen::Index>(rule.order);
    Eigen::MatrixXcd m(n, n);
    if (form == WeightForm::symmetric) {
        m = -z * nystrom_matrix(kernel, rule).cast<complex>();
    } else {
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i)
                m(i, j) = -z * kernel_value(kernel.variant, rule.nodes[i], rule.nodes[j]) * rule.weights[j];
    }
    m.diagonal().array() += 1.0;
    return lu_determinant(m);
}

std::vector<double> nystrom_eigenvalues(const KernelSpec& kernel, const QuadratureRule& rule)
{
    check_rule(kernel, rule);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(nystrom_matrix(kernel, rule),
                                                      Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalFailure("nystrom_eigenvalues: eigen solver did not converge");
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

DeterminantGrid sample_determinant(const KernelSpec& kernel, const QuadratureRule& rule,
                                   double radius, std::size_t points, DeterminantMethod method)
{
    if (points == 0)
        throw ArgumentError("sample_determinant: need at least one contour point");
    DeterminantGrid grid{kernel, rule, radius, {}};
    grid.samples.reserve(points);

    std::vector<double> eig;
    if (method == DeterminantMethod::spectral)
        eig = nystrom_eigenvalues(kernel, rule);

    for (std::size_t k = 0; k < points; ++k) {
        const double theta = 2.0 * pi * double(k) / double(points);
        const complex z = 1.0 + radius * complex(std::cos(theta), std::sin(theta));
        complex det;
        if (method == DeterminantMethod::spectral) {
            det = 1.0;
            for (double mu : eig)
                det *= 1.0 - z * mu;
        } else {
            det = nystrom_determinant(kernel, z, rule);
        }
        grid.samples.emplace_back(z, det);
    }
    return grid;
}

ContourExtraction contour_derivatives(const DeterminantGrid& grid, std::size_t lmax,
                                      double residue_tolerance)
{
    const std::size_t n = grid.samples.size();
    if (n == 0)
        throw ArgumentError("contour_derivatives: empty grid");
    // Unit roots e^{-2 pi i j / n}; indexing by (k l mod n) keeps every phase exact.
    std::vector<complex> roots(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = -2.0 * pi * double(j) / double(n);
        roots[j] = complex(std::cos(theta), std::sin(theta));
    }
    ContourExtraction out;
    out.coefficients.resize(lmax + 1);
    double scale = 1.0;  // radius^{-l}
    for (std::size_t l = 0; l <= lmax; ++l) {
        complex acc = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            acc += grid.samples[k].second * roots[(k * l) % n];
        acc *= scale / double(n);
        const double sign = (l % 2 == 0) ? 1.0 : -1.0;
        out.coefficients[l] = sign * acc.real();
        out.imag_residue = std::max(out.imag_residue, std::abs(acc.imag()));
        scale /= grid.radius;
    }
    if (out.imag_residue > residue_tolerance) {
        std::ostringstream os;
        os << "contour_derivatives: imaginary residue " << out.imag_residue << " exceeds "
           << residue_tolerance;
        throw NumericalFailure(os.str());
    }
    return out;
}

ContourExtraction kernel_counting_coefficients(const KernelSpec& kernel, std::size_t lmax,
                                               const ResolutionPolicy& policy)
{
    if (kernel.interval_length == 0.0) {
        ContourExtraction out;
        out.coefficients.assign(lmax + 1, 0.0);
        out.coefficients[0] = 1.0;
        return out;
    }
    const auto rule = gauss_legendre(policy.order_for(kernel.interval_length), 0.0,
                                     kernel.interval_length);
    const auto grid = sample_determinant(kernel, rule, policy.contour_radius,
                                         policy.contour_points_for(lmax), policy.method);
    return contour_derivatives(grid, lmax, policy.residue_tolerance);
}

CountingProbabilities counting_probabilities(SymmetryClass beta, double s, std::size_t lmax,
                                             const ResolutionPolicy& policy)
{
    if (!std::isfinite(s) || s < 0)
        throw DomainError("counting_probabilities: s must be finite and non-negative");
    policy.validate();

    CountingProbabilities out;
    out.beta = beta;
    out.s = s;
    out.values.assign(lmax + 1, 0.0);

    switch (beta) {
    case SymmetryClass::unitary: {
        auto c = kernel_counting_coefficients({KernelVariant::full_sine, s}, lmax, policy);
        out.values = std::move(c.coefficients);
        out.imag_residue = c.imag_residue;
        break;
    }
    case SymmetryClass::orthogonal: {
        const std::size_t half = lmax / 2 + 1;
        const auto even = kernel_counting_coefficients({KernelVariant::even_sine, s / 2}, half, policy);
        const auto odd = kernel_counting_coefficients({KernelVariant::odd_sine, s / 2}, half, policy);
        const auto& ep = even.coefficients;
        const auto& em = odd.coefficients;
        out.values[0] = ep[0];
        for (std::size_t k = 1; k <= lmax; ++k) {
            // odd k = 2n+1 peels E_-(n); even k = 2n peels E_+(n).
            const double source = (k % 2 == 1) ? em[(k - 1) / 2] : ep[k / 2];
            out.values[k] = source - out.values[k - 1];
        }
        out.imag_residue = std::max(even.imag_residue, odd.imag_residue);
        break;
    }
    case SymmetryClass::symplectic: {
        const auto even = kernel_counting_coefficients({KernelVariant::even_sine, s}, lmax, policy);
        const auto odd = kernel_counting_coefficients({KernelVariant::odd_sine, s}, lmax, policy);
        for (std::size_t n = 0; n <= lmax; ++n)
            out.values[n] = 0.5 * (even.coefficients[n] + odd.coefficients[n]);
        out.imag_residue = std::max(even.imag_residue, odd.imag_residue);
        break;
    }
    }

    double total = 0.0;
    for (double v : out.values)
        total += v;
    out.truncation_defect = std::abs(1.0 - total);
    if (out.truncation_defect > policy.defect_tolerance) {
        std::ostringstream os;
        os << "counting_probabilities: truncation defect " << out.truncation_defect << " at s = " << s
           << " (beta = " << beta_value(beta) << ", lmax = " << lmax
           << "); raise lmax, quadrature order or contour points";
        throw ResolutionFailure(os.str(), s);
    }
    return out;
}

} // namespace snb
