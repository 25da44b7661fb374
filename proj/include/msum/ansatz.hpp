#ifndef MSUM_ANSATZ_HPP
#define MSUM_ANSATZ_HPP

#include <optional>
#include <string>
#include <vector>

#include "msum/recurrence.hpp"

namespace msum {

/// Search envelope and solve options for the harmonic-sum ansatz.
struct AnsatzConfig {
    AnsatzBasis basis;
    std::optional<long> eps_order;   // overrides the recurrence header
    bool zero_free_constants = false; // telescoping mode: pin frees to 0
};

enum class AnsatzStatus { Solved, BasisInsufficient, InconsistentIcs, Underdetermined };

struct AnsatzResult {
    AnsatzStatus status = AnsatzStatus::BasisInsufficient;
    EExpr solution; // meaningful when status == Solved
    std::vector<std::string> unmatched; // canonical keys that failed to match
    std::vector<std::string> hints;     // basis-extension suggestions
    std::string message;
    bool solved() const { return status == AnsatzStatus::Solved; }
};

/// Linear solve over the enumerated basis: applies the recurrence operator to
/// every basis element, matches coefficients of each canonical key as rational
/// functions of the variable, and pins free constants with the ics.  eps-
/// dependent recurrences are solved slice by slice, ascending in the eps power.
AnsatzResult solve_ansatz(const Recurrence& rec, const AnsatzConfig& cfg,
                          const InitialConditions& ics);

struct HarmonicTelescope {
    bool solved = false;
    HExpr g;                         // g(k+1) - g(k) = f(k) when solved
    std::vector<std::string> hints;
    std::string message;
};

/// Envelope derived from the summand: weight f.weight()+1, pole offsets seen
/// in f (plus 0), alt/zeta content of f.
AnsatzConfig telescope_envelope(const HExpr& f);

/// Telescoping inside the harmonic-sum class via the ansatz route; complete
/// within the configured envelope.
HarmonicTelescope telescope_harmonic(const HExpr& f,
                                     std::optional<AnsatzConfig> cfg = {});

} // namespace msum

#endif
