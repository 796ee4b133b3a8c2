#pragma once

// Brute-force regular-embedding search, written straight from the definition
// and sharing nothing with the signature recursion. Used as a test oracle.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "treeramsey/signature_dp.hpp"
#include "treeramsey/tree_core.hpp"

namespace treeramsey {

inline constexpr int kOracleMaxTreeDepth = 6;
inline constexpr int kOracleMaxEmbedDepth = 4;

struct OracleResult {
    std::vector<EmbeddingWitness> witnesses;  // by signature mask, then heap-order images
    SignatureFamily signatures;               // signatures of the witnesses found
};

// Calls visit on every regular embedding of T_d into H with the given
// signature. Returning false from visit stops the search. Returns false iff
// the search was stopped.
bool oracle_visit(const TreeSubset& subset, Signature signature,
                  const std::function<bool(const EmbeddingWitness&)>& visit);

// All regular embeddings of T_d into H. ResourceLimitError beyond n <= 6, d <= 4.
OracleResult oracle_enumerate(const TreeSubset& subset, int d);

// Whether some regular embedding with this signature lands in H, with one if so.
std::optional<EmbeddingWitness> oracle_find(const TreeSubset& subset, Signature signature);

// S(H) by existence search over every level subset. ResourceLimitError for n > 6.
SignatureFamily oracle_signature_set(const TreeSubset& subset);

}  // namespace treeramsey
