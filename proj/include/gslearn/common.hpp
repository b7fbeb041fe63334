#ifndef GSLEARN_COMMON_HPP
#define GSLEARN_COMMON_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace gslearn {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Base class for all structured errors. Carries the originating module and
/// operation so the CLI can report where a failure came from.
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string op, const std::string& what)
        : std::runtime_error(module + "::" + op + ": " + what),
          module_(std::move(module)), op_(std::move(op)) {}

    const std::string& module_name() const { return module_; }
    const std::string& op_name() const { return op_; }

private:
    std::string module_;
    std::string op_;
};

#define GSLEARN_ERROR_TYPE(NAME)                                         \
    class NAME : public Error {                                          \
    public:                                                              \
        using Error::Error;                                              \
    }

GSLEARN_ERROR_TYPE(NotSymmetric);
GSLEARN_ERROR_TYPE(NotPositiveDefinite);
GSLEARN_ERROR_TYPE(NumericalBreakdown);
GSLEARN_ERROR_TYPE(TooPure);
GSLEARN_ERROR_TYPE(DimensionMismatch);
GSLEARN_ERROR_TYPE(InvalidRange);
GSLEARN_ERROR_TYPE(EmptyBatch);
GSLEARN_ERROR_TYPE(FactorizationFailed);
GSLEARN_ERROR_TYPE(Infeasible);
GSLEARN_ERROR_TYPE(HypothesisViolated);
GSLEARN_ERROR_TYPE(GenerationFailed);
GSLEARN_ERROR_TYPE(LogBranchFailure);
GSLEARN_ERROR_TYPE(NoNeighborhoodAccepted);
GSLEARN_ERROR_TYPE(SearchBudgetExceeded);
GSLEARN_ERROR_TYPE(SingularBlock);

#undef GSLEARN_ERROR_TYPE

/// Numerical tolerances used across the library. Defaults are scale-aware for
/// double precision; any of them can be overridden per call site.
struct Tolerances {
    double sym_tol = 1e-10;        // symmetry check, absolute on max entry
    double pd_tol = 1e-12;         // positive definiteness floor
    double symplectic_tol = 1e-10; // |S Omega S^T - Omega|_max
    double recon_rel_tol = 1e-8;   // reconstruction, relative to |H|_inf
    double psd_tol = 1e-10;        // bona fide check slack
    double purity_tol = 1e-6;      // distance of symplectic eigenvalue from 1/2
    double realify_rel_tol = 1e-8; // imaginary residue, relative
    double det_tol = 1e-12;        // determinant positivity floor
    double rel_tol = 1e-10;        // relative entropy negativity slack
    double eig_cond_max = 1e12;    // eigenbasis condition cap for dense log
    double log_tol = 1e-12;        // distance of spectrum from the branch cut
};

inline const Tolerances& default_tols() {
    static const Tolerances t{};
    return t;
}

/// Max-entry norm, |M|_max.
inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
inline double max_abs(const CMat& m) { return m.cwiseAbs().maxCoeff(); }

/// Operator (spectral) norm via SVD.
double operator_norm(const Mat& m);
double operator_norm(const CMat& m);

/// Smallest singular value via SVD.
double min_singular_value(const CMat& m);

void require_symmetric(const Mat& m, double tol, const char* module,
                       const char* op);

} // namespace gslearn

#endif
