#include "geoelim/prover.hpp"

#include "geoelim/errors.hpp"
#include "geoelim/model.hpp"

#include <cmath>
#include <set>

namespace geoelim::prover {

using construction::AlgebraicModel;
using construction::CompileOptions;
using construction::ConstructionProgram;
using construction::Witness;
using construction::WitnessOptions;
using exactmath::AlgebraicNumber;
using exactmath::MultiPoly;
using exactmath::RootCandidate;

namespace {

double value_at_witness(const Witness& w, const std::string& label) {
    auto it = w.values.find(label);
    if (it == w.values.end())
        throw QueryError("relation query references unknown value label '" + label + "'");
    return it->second;
}

double witness_ratio_of(const Witness& w, const RelationQuery& q) {
    double left = value_at_witness(w, q.left);
    double right = value_at_witness(w, q.right);
    if (std::abs(left) < 1e-12)
        throw QueryError("ratio undefined at the witness: '" + q.left + "' evaluates to zero");
    if (std::abs(right) < 1e-12)
        throw QueryError("'" + q.right +
                         "' vanishes at the witness; there is no positive constant ratio");
    return right / left;
}

std::size_t select_candidate(const std::vector<RootCandidate>& candidates, double target,
                             double tol, double* distance) {
    std::size_t best = candidates.size();
    double best_d = tol;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        double d = std::abs(candidates[i].approx - target);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    if (distance) *distance = best_d;
    return best;
}

} // namespace

RelationResult discover_ratio(const ConstructionProgram& program, const RelationQuery& query,
                              const ProveOptions& options) {
    CompileOptions copts;
    copts.pin = options.pin;
    AlgebraicModel model = compile(program, copts);
    if (!model.has_value(query.left))
        throw QueryError("relation query references unknown value label '" + query.left + "'");
    if (!model.has_value(query.right))
        throw QueryError("relation query references unknown value label '" + query.right + "'");

    WitnessOptions wopts;
    wopts.seed = options.seed;
    wopts.tol = options.witness_tol;
    wopts.pin = options.pin;
    Witness witness = numeric_witness(program, wopts);
    double wr = witness_ratio_of(witness, query);

    // Adjoin m*left = right and eliminate everything except m.
    std::size_t ratio_var = model.add_variable(construction::VarRole::Query, "ratio");
    MultiPoly left = model.value_expr(query.left);
    MultiPoly right = model.value_expr(query.right);
    MultiPoly m = MultiPoly::variable(model.var_count(), ratio_var);
    model.add_constraint((m * left - right).primitive_integer_form());

    RelationResult result;
    auto generators = exactmath::eliminate(model.constraints(), std::set<std::size_t>{ratio_var},
                                           options.gb, &result.stats);
    if (generators.empty())
        throw QueryError("not a constant relation: eliminating to the ratio variable yields the "
                         "zero ideal");

    // A reduced basis of a principal ideal in one variable has one element.
    MultiPoly generator = generators.front();
    std::vector<std::optional<std::size_t>> mapping(model.var_count());
    mapping[ratio_var] = 0;
    MultiPoly uni = generator.remapped(mapping, 1);
    result.eliminated = exactmath::squarefree_part(uni);
    result.candidates = exactmath::extract_algebraic(result.eliminated);

    double dist = 0;
    std::size_t pick = select_candidate(result.candidates, wr, options.match_tol, &dist);
    if (pick == result.candidates.size())
        throw Error("internal inconsistency: no positive eliminated root matches the witness "
                    "ratio " +
                    std::to_string(wr));
    if (!result.candidates[pick].exact)
        throw QueryError("the matching root is not expressible as a rational or quadratic surd");

    result.ratio = *result.candidates[pick].exact;
    result.minimal_polynomial = result.ratio.minimal_polynomial();
    result.witness_ratio = wr;
    result.match_distance = dist;
    result.witness = witness;
    result.verdict = RelationResult::Verdict::Unique;

    // Ambiguity checks: a second root within tolerance, or a second witness
    // electing a different root.
    for (std::size_t i = 0; i < result.candidates.size(); ++i) {
        if (i != pick && std::abs(result.candidates[i].approx - wr) < options.match_tol)
            result.verdict = RelationResult::Verdict::AmbiguousMultipleRoots;
    }
    WitnessOptions wopts2 = wopts;
    wopts2.seed = options.seed + 1;
    Witness witness2 = numeric_witness(program, wopts2);
    double wr2 = witness_ratio_of(witness2, query);
    std::size_t pick2 = select_candidate(result.candidates, wr2, options.match_tol, nullptr);
    if (pick2 != pick) result.verdict = RelationResult::Verdict::AmbiguousMultipleRoots;

    return result;
}

exactmath::Rational square_ratio(const RelationResult& result) {
    return result.ratio.square_as_rational();
}

} // namespace geoelim::prover
