#ifndef MSUM_RECURRENCE_HPP
#define MSUM_RECURRENCE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "msum/ast.hpp"
#include "msum/harmonic.hpp"
#include "msum/zeta.hpp"

namespace msum {

enum class FieldKind { Q, Eps, RatN };

/// Linear difference equation  sum_{i=0}^{k} a_i(N) I(N-i) = rhs(N).
struct Recurrence {
    std::string var = "N";
    int order = 1;
    FieldKind field = FieldKind::Q;
    std::optional<long> eps_order;
    std::vector<EExpr> coeffs; // a_0..a_k; every eps-coefficient a pure rational function
    NodePtr rhs_ast;           // surface form (may reference external sequences)
    EExpr rhs;                 // lowered form; valid iff rhs_resolved
    bool rhs_resolved = false;
    std::set<std::string> rhs_externals;

    /// a_i at eps^0 as a rational function of the variable.
    RatFuncQ coeff_q(int i) const;
    /// a_i's eps-coefficient at the given power.
    RatFuncQ coeff_q(int i, long eps_pow) const;
};

using InitialConditions = std::map<long, ZetaValue>;

struct ResidualReport {
    bool pass = false;
    std::vector<std::pair<long, ZetaValue>> residuals; // reported per checked N
    std::optional<long> first_failure;
    std::string message;
};

struct SingularPoints {
    std::set<long> forward;  // integer zeros of a_0
    std::set<long> backward; // integer zeros of a_k
};

/// Operator application: sum_i a_i * shift(candidate, -i), canonicalized.
EExpr rec_apply(const Recurrence& rec, const EExpr& candidate);
HExpr rec_apply(const Recurrence& rec, const HExpr& candidate);

/// Exact residual check of `candidate` over N = lo..hi plus all supplied ics.
ResidualReport verify_solution(const Recurrence& rec, const EExpr& candidate,
                               const InitialConditions& ics, long lo, long hi);

SingularPoints singular_points(const Recurrence& rec);

/// Forward recursion oracle: exact values I(N) for N = seed..upTo, requiring
/// `order` consecutive seed values in ics and explicit ics at every
/// forward-singular point encountered. eps-free recurrences only.
std::map<long, ZetaValue> unroll(const Recurrence& rec, const InitialConditions& ics,
                                 long upTo);

/// On-disk form: header lines, coefficient expressions, rhs, optional ics.
struct RecurrenceFile {
    Recurrence rec;
    InitialConditions ics;
    std::map<long, NodePtr> ic_asts;
    std::vector<NodePtr> coeff_asts;
};

RecurrenceFile read_recurrence_file(const std::string& path,
                                    const std::map<std::string, EExpr>& externals = {});
RecurrenceFile parse_recurrence_text(const std::string& text,
                                     const std::map<std::string, EExpr>& externals = {});
std::string write_recurrence_file(const RecurrenceFile& f);

} // namespace msum

#endif
