#pragma once

// Cut functions for the restriction operators pi_n and enc_B: formula
// transformers with f(p) |= phi  <=>  p |= cut_f(phi).

#include <optional>
#include <string>
#include <vector>

#include "hml/formula.hpp"
#include "hml/process.hpp"
#include "hml/tree_store.hpp"

namespace hml {

struct RestrictionOp {
    enum class Kind { Projection, Encapsulation };
    Kind kind = Kind::Projection;
    int depth = 0;         // Projection
    ActionSet blocked;     // Encapsulation

    static RestrictionOp projection(int n);
    static RestrictionOp encapsulation(ActionSet blocked);

    [[nodiscard]] Term apply(const Term& p) const;
    StateId apply(TreeStore& store, StateId s) const;
    /// "pi:2", "enc:{a,b}"
    [[nodiscard]] std::string to_string() const;
};

/// Inverse of RestrictionOp::to_string. Throws std::invalid_argument.
[[nodiscard]] RestrictionOp parse_restriction(const std::string& text);

/// Homomorphic on T, conjunction and negation. Diamonds cut by the operator
/// become F (represented as ~T).
[[nodiscard]] Formula cut(const RestrictionOp& op, const Formula& phi);

enum class ResidueKind { EquivFalse, ContextForm };

struct Residue {
    std::vector<FormulaPath> replaced;  // diamonds of phi that the cut turns into F
    ResidueKind kind = ResidueKind::ContextForm;
    std::optional<Formula> context_form;  // ContextForm only
};

/// Shape of cut(op, phi): F if an introduced F sits outside every negation;
/// otherwise phi with each innermost negation enclosing an introduced F
/// replaced by T. With nothing replaced the context form is phi itself.
[[nodiscard]] Residue cut_residue_shape(const RestrictionOp& op, const Formula& phi);

struct CutBounds {
    ActionSet actions{"a", "b"};
    int process_depth = 3;
    int process_branch = 2;
    int formula_depth = 3;
    int formula_width = 2;
    int formula_size = 9;
};

struct CutViolation {
    Term process;
    Formula phi;
    bool restricted_sat = false;  // op(p) |= phi
    bool cut_sat = false;         // p |= cut(phi)
};

struct CutResult {
    std::size_t processes = 0;
    std::size_t formulas = 0;
    std::size_t checks = 0;
    std::optional<CutViolation> violation;
};

/// Compares op(p) |= phi with p |= cut(op, phi) on every enumerated process
/// and formula.
[[nodiscard]] CutResult verify_cut(const RestrictionOp& op, const CutBounds& bounds = {});

} // namespace hml
