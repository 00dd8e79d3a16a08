#pragma once

#include "svir/maptable.hpp"

namespace svir {

/// Matrix of y |-> [y, x] from ansatz coordinates to target coordinates.
/// Fails with window_escape when a bracket output leaves the target (never
/// truncates silently).
Matrix ad_matrix(const AlgebraConfig& cfg, const Element& x, const Window& ansatz,
                 const Window& target);

/// The exact support reachable by [y, p] for y in ansatz and p among probes,
/// unioned with `extra` symbols.
Window reachable_target(const AlgebraConfig& cfg, const std::vector<Element>& probes,
                        const Window& ansatz, const std::vector<BasisSymbol>& extra = {});

struct LeibnizViolation {
    BasisSymbol x, y;
    Element defect;  // D([x,y]) - [D(x),y] - (-1)^{|D||x|}[x,D(y)]
};

/// Graded Leibniz check of a map table on all basis pairs within
/// check_radius. Mixed-parity tables are split into even and odd parts
/// first. Throws domain_insufficiency naming missing symbols when the table
/// cannot evaluate a needed input.
std::vector<LeibnizViolation> leibniz_violations(const MapTable& d, std::int64_t check_radius);

struct DegreeBlock {
    std::int64_t y_degree2 = 0;  // doubled degree of the ansatz block
    bool solvable = true;
    std::size_t block_dim = 0;   // ansatz symbols in this block
    std::size_t rank = 0;        // rank of the block operator
    Element required;            // output component this block must produce
};

struct WitnessReport {
    enum class Status { witness, none_in_window, out_of_scope };
    Status status = Status::out_of_scope;
    Window ansatz;
    Element witness;   // canonical minimal solution when status == witness
    Element residual;  // zero iff the witness is exact
    // Per-degree-block certificate; filled when every input is
    // degree-homogeneous (then the system block-diagonalizes).
    std::vector<DegreeBlock> blocks;

    bool found() const { return status == Status::witness; }
};

/// Solve [y, input_j] = output_j for all entries simultaneously with y
/// supported on the ansatz. The target window is enlarged automatically to
/// the exact reachable support, so escape is never an error here.
WitnessReport inner_witness(const MapTable& d, const Window& ansatz);

/// Single-point decision: is v = [y, x] solvable on the ansatz?
WitnessReport local_der_at(const AlgebraConfig& cfg, const Element& x, const Element& v,
                           const Window& ansatz);

/// Intersection of the images of y |-> [y, p] over all probes, expressed as
/// a canonical subspace of `target`. Images are computed over the enlarged
/// reachable window and the intersection is then restricted to target.
Subspace image_intersection(const AlgebraConfig& cfg, const std::vector<Element>& probes,
                            const Window& ansatz, const Window& target);

struct NormalizationReport {
    enum class Status { ok, base_unsolvable, shape_violation };
    Status status = Status::ok;
    Element witness;          // accumulated inner witness
    Element shape_offender;   // set when status == shape_violation
    std::vector<std::pair<Element, Element>> residuals;  // (input, defect)
    bool all_zero = false;

    bool inner_on_window() const { return status == Status::ok && all_zero; }
};

/// Recover an inner witness for a map table by normalization:
///  1. solve d(L0) = [y0, L0] and subtract ad(y0);
///  2. read the L(1)/G(1) coefficients c, dd of the corrected d(L1) and
///     subtract -(c ad(L0) + 2 dd ad(G0)) (only coefficients whose symbols
///     exist on the config's grid);
///  3. report the corrected map's values on every remaining input.
/// The accumulated witness reproduces d exactly iff all residuals vanish.
NormalizationReport recover_inner_witness(const MapTable& d, const Window& ansatz);

} // namespace svir
