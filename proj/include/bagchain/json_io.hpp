#pragma once

#include <variant>
#include <vector>

#include <json.hpp>

#include "bagchain/multiset.hpp"
#include "bagchain/partitions.hpp"
#include "bagchain/symbolic.hpp"
#include "bagchain/tensor.hpp"

namespace bagchain {

using json = nlohmann::json;

// Wire forms:
//   MultisetIndex          [m_1, ..., m_d]
//   PartitionEnumeration   {"parent": [...], "k": k,
//                           "entries": [{"blocks": [[...], ...], "multiplicity": "12"}]}
//   DerivativeTensor       {"dim": d, "order": N, "mode": "rational"|"float",
//                           "entries": [{"index": [...], "value": "p/q" | number}]}
//   MapJet                 {"in_dim": d, "out_dim": c, "order": N,
//                           "base_point": [...], "components": [DerivativeTensor, ...]}
//
// Readers throw ParseError with a message naming the offending field.

using AnyTensor = std::variant<DerivativeTensor<Rational>, DerivativeTensor<double>>;
using AnyMapJet = std::variant<MapJet<Rational>, MapJet<double>>;

json to_json(const MultisetIndex& index);
MultisetIndex index_from_json(const json& j);

json to_json(const MultisetPartition& partition);
json to_json(const PartitionEnumeration& enumeration);
/// {"distinct": .., "cardinality": "..", "stirling2": ".."}
json counts_json(const PartitionEnumeration& enumeration);

json to_json(const DerivativeTensor<Rational>& tensor);
json to_json(const DerivativeTensor<double>& tensor);
json to_json(const AnyTensor& tensor);
AnyTensor tensor_from_json(const json& j);

json to_json(const MapJet<Rational>& jet);
json to_json(const MapJet<double>& jet);
AnyMapJet map_jet_from_json(const json& j);

json to_json(const SymbolicExpansion& expansion);
json to_json(const std::vector<FaaTerm>& rows);

/// "p/q" or "p"; also accepts JSON integers.
Rational rational_from_json(const json& j);

}  // namespace bagchain
