#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "jts/junction_tree.hpp"
#include "jts/rng.hpp"

namespace jts {

enum class MoveArity { single, multi };
enum class MoveDir { connect, disconnect };
enum class MoveCase { a, b, c, d };

// A fully described connect/disconnect perturbation. X and Y are the
// vertex sets being completely connected (or disconnected) across the
// separator S; the case tag records whether the cliques involved are
// exactly X∪S / Y∪S or proper supersets. Proposals are canonicalized so
// the smallest label of X∪Y lies in X.
struct MoveProposal {
    MoveDir direction = MoveDir::connect;
    MoveArity arity = MoveArity::single;
    MoveCase case_tag = MoveCase::a;
    int anchor = -1;  // link id (connect) or clique node id (disconnect)
    int cx = -1;      // X-side clique; disconnect: identified C_X or -1
    int cy = -1;      // Y-side clique; disconnect: identified C_Y or -1
    VertexSet X, Y, S;
    // disconnect case (a): random side for each neighbour touching
    // neither X nor Y (link id, attaches to the X∪S clique?)
    std::vector<std::pair<int, bool>> n0_assign;
    double log_q_forward = 0.0;
    double log_q_reverse = 0.0;
};

// number of graph edges the move adds (positive) or removes (negative)
long edge_delta(const MoveProposal& p);

// Draws a separator uniformly and proposes completely connecting X and Y
// chosen from the two flanking cliques. Empty when the tree has no links
// (single clique). log_q_forward and log_q_reverse are filled in exactly.
std::optional<MoveProposal> propose_connect(const JunctionTree& j, MoveArity arity, Rng& rng);

// Draws a clique uniformly and proposes disconnecting a random partition
// (X, Y, S) of it. Empty on the paper-prescribed rejections: singleton
// clique, a neighbour meeting both X and Y, or case validity failure.
std::optional<MoveProposal> propose_disconnect(const JunctionTree& j, MoveArity arity, Rng& rng);

// Applies the perturbation to a copy of j; the input tree is untouched.
// Throws InvalidProposal if p does not fit j.
JunctionTree apply_connect(const JunctionTree& j, const MoveProposal& p);
JunctionTree apply_disconnect(const JunctionTree& j, const MoveProposal& p);
JunctionTree apply_move(const JunctionTree& j, const MoveProposal& p);

// Exact log probability that the sampling procedure emits p's unordered
// (X, Y, S) outcome (and, in disconnect case (a), its neighbour
// assignment) from state j. Independent of the values stored in p.
double proposal_probability(const JunctionTree& j, const MoveProposal& p);

// The unique move reversing p, built against the post-move tree. j_old
// supplies the original attachment sides for disconnect case (a) so that
// applying the reverse reconstructs j_old exactly.
MoveProposal reverse_proposal_of(const JunctionTree& j_old, const JunctionTree& j_new,
                                 const MoveProposal& p);

// log q(J', J) for the reverse of p evaluated on the new state
double reverse_proposal(const JunctionTree& j_new, const MoveProposal& p);

}  // namespace jts
