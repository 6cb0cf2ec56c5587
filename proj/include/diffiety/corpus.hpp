#pragma once
/* Built-in example systems with pinned solver results.
 *
 * Each entry embeds the same text as the corresponding corpus/<name>.eq file
 * plus golden bases at stated ansatz bounds.  Goldens were produced by the
 * solver and then checked by hand against the defining equations; tests and
 * `selftest` re-verify them from scratch on every run.
 */

#include <string>
#include <vector>

#include "diffiety/solver.hpp"

namespace diffiety {

struct GoldenBasis {
    std::string kind; /* "symmetries" | "cosymmetries" */
    AnsatzSpace bounds;
    long expected_dim = -1; /* -1: dimension not pinned */
    bool exact = false;     /* listed elements span the whole kernel */
    std::vector<std::vector<std::string>> elements; /* one string per component */
};

struct CorpusEntry {
    std::string name;
    std::string text;
    std::string notes;
    std::vector<GoldenBasis> goldens;

    EquationSystem parse() const;
};

const std::vector<CorpusEntry>& load_corpus();

/* Entry by name; throws error for unknown names. */
const CorpusEntry& corpus_entry(const std::string& name);

/* Re-solves each golden at its stated bounds and checks: every listed
 * element is annihilated by the relevant restricted operator, the listed
 * elements lie in the computed kernel, pinned dimensions match, and exact
 * goldens span the kernel.  Throws error on the first mismatch. */
void verify_goldens(const CorpusEntry& entry);

}  // namespace diffiety
