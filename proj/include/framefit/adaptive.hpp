///
/// \file adaptive.hpp
///
/// Adaptive selection of the truncation size N with the residual-based
/// stopping criterion.
///
/// A truncation \f$\Phi_N\f$ with regularized solution \f$c\f$ is accepted
/// when, checked in order,
///  1. \f$\|Ac - b\| \le \delta \|b\|\f$, and
///  2. \f$|f(t_i) - f_N(t_i)| \le \delta' \|b\|\f$ at Q random points
///     \f$t_i \in \Omega\f$ drawn once per run,
///  3. optionally \f$\|c\| \le \mu \|b\|\f$.
///
#ifndef FRAMEFIT_ADAPTIVE_HPP
#define FRAMEFIT_ADAPTIVE_HPP

#include <cstdint>
#include <list>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <framefit/dictionary.hpp>
#include <framefit/domain.hpp>
#include <framefit/function.hpp>
#include <framefit/sampling.hpp>
#include <framefit/search.hpp>
#include <framefit/solver.hpp>
#include <framefit/truncation.hpp>

namespace framefit
{

struct StoppingCriterion
{
    double delta       = 1e-10;
    double delta_prime = 1e-10;
    double epsilon     = 1e-12;
    Index q            = 3;
    std::uint64_t seed = 0;
    Index nmax         = 4096;
    std::optional<double> mu;

    /// delta' = delta and epsilon = delta / 100.
    static StoppingCriterion from_delta(double delta);

    /// Throws InvalidArgument unless 0 < delta, delta' < 1, epsilon > 0,
    /// Q >= 0, Nmax >= 1 and mu > 0 when set.
    void validate() const;
};

struct CriterionOutcome
{
    bool residual_pass = false;
    bool points_pass   = false; ///< false when not evaluated
    bool points_checked = false;
    std::optional<bool> coefficient_pass;
    bool accepted = false;

    double residual_norm     = 0.0;
    double reference_b_norm  = 0.0;
    double max_point_error   = 0.0;
};

/// \f$f_N = \sum_k c_k \phi_k\f$
template <typename Scalar>
struct Approximant
{
    Dictionary dictionary;
    TruncationDescriptor descriptor;
    Vector<Scalar> coefficients;

    Complex operator()(const Point& x) const
    {
        return dictionary.evaluate_expansion(descriptor, coefficients, x);
    }
};

/// Evaluate the criterion for one solution. `test_points` holds the Q random
/// points column-wise; `reference_b_norm` is the \f$\|b\|\f$ on the right-hand
/// sides. Points are only checked once the residual condition passes.
template <typename Scalar>
CriterionOutcome check_criterion(const RegularizedSolution<Scalar>& solution,
                                 double reference_b_norm, const Function& f,
                                 const Approximant<Scalar>& approximant,
                                 const Eigen::MatrixXd& test_points,
                                 const StoppingCriterion& criterion);

/// Same, for a system: test points are drawn on the system's domain with
/// the criterion seed and \f$\|b\|\f$ is the system's right-hand side norm.
template <typename Scalar>
CriterionOutcome check_criterion(const LeastSquaresSystem<Scalar>& system,
                                 const RegularizedSolution<Scalar>& solution,
                                 const Function& f,
                                 const Approximant<Scalar>& approximant,
                                 const StoppingCriterion& criterion);

/// The function, dictionary and sampling that define a family of least
/// squares problems indexed by the truncation.
struct FitProblem
{
    Function function;
    Dictionary dictionary;
    Domain domain;
    AssemblyOptions assembly;
};

/// Assembles and solves the problems of one FitProblem. Optionally caches
/// the SVD of each truncation (least recently used entries are dropped once
/// `cache_bytes` is exceeded), so that runs with different thresholds reuse
/// factorizations. Not safe for concurrent use.
template <typename Scalar>
class FitEngine
{
public:
    struct Fit
    {
        RegularizedSolution<Scalar> solution;
        double b_norm = 0.0;
    };

    explicit FitEngine(FitProblem problem, std::size_t cache_bytes = 0);

    const FitProblem& problem() const noexcept
    {
        return problem_;
    }

    LeastSquaresSystem<Scalar> assemble(const TruncationDescriptor& desc) const;

    Fit fit(const TruncationDescriptor& desc, double epsilon,
            ThresholdMode mode = ThresholdMode::absolute);

    /// Number of SVDs computed so far.
    Index factorizations() const noexcept
    {
        return factorizations_;
    }

private:
    struct Entry
    {
        std::string key;
        std::shared_ptr<const PreparedSystem<Scalar>> prepared;
        std::size_t bytes;
    };

    FitProblem problem_;
    std::size_t cache_bytes_;
    std::size_t used_bytes_ = 0;
    std::list<Entry> lru_;
    std::map<std::string, typename std::list<Entry>::iterator> index_;
    Index factorizations_ = 0;
};

enum class Termination
{
    converged,
    hit_nmax
};

enum class Strategy
{
    incremental,
    bisection
};

struct TraceEntry
{
    TruncationDescriptor descriptor;
    SearchPhase phase = SearchPhase::incremental;
    double residual_norm    = 0.0;
    double coefficient_norm = 0.0;
    double b_norm           = 0.0;
    CriterionOutcome outcome;
};

template <typename Scalar>
struct AdaptiveResult
{
    std::optional<TruncationDescriptor> accepted;
    /// Solution at the accepted truncation, or at the last evaluated one
    /// when the search hit Nmax.
    RegularizedSolution<Scalar> solution;
    Approximant<Scalar> approximant;
    std::vector<TraceEntry> trace;
    double reference_b_norm = 0.0;
    Termination terminated  = Termination::hit_nmax;
    std::vector<std::string> warnings;
};

template <typename Scalar>
AdaptiveResult<Scalar> adapt_incremental(FitEngine<Scalar>& engine,
                                         const TruncationSchedule& schedule,
                                         const StoppingCriterion& criterion);

template <typename Scalar>
AdaptiveResult<Scalar> adapt_bisection(FitEngine<Scalar>& engine,
                                       const TruncationSchedule& schedule,
                                       const StoppingCriterion& criterion);

template <typename Scalar>
AdaptiveResult<Scalar> optimal_n(FitEngine<Scalar>& engine,
                                 const TruncationSchedule& schedule,
                                 const StoppingCriterion& criterion, Strategy strategy);

template <typename Scalar>
AdaptiveResult<Scalar> optimal_n(const FitProblem& problem,
                                 const TruncationSchedule& schedule,
                                 const StoppingCriterion& criterion, Strategy strategy)
{
    FitEngine<Scalar> engine(problem);
    return optimal_n<Scalar>(engine, schedule, criterion, strategy);
}

std::string to_string(Termination t);
std::string to_string(Strategy s);
std::string to_string(SearchPhase p);

/// CSV with columns phase,N,descriptor,residual,coefnorm,bnorm,residual_pass,
/// points_pass,accepted.
void write_trace_csv(std::ostream& os, const std::vector<TraceEntry>& trace);

extern template class FitEngine<double>;
extern template class FitEngine<Complex>;

} // namespace framefit

#endif /* FRAMEFIT_ADAPTIVE_HPP */
