#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reachmesh/normalization.hpp"
#include "reachmesh/types.hpp"

namespace reachmesh {

/// Quantized, whitened state coordinates. Stored as exact integers so box
/// membership never depends on float hashing or equality.
struct MeshKey {
  std::vector<std::int64_t> lattice;

  bool operator==(const MeshKey& other) const { return lattice == other.lattice; }
};

struct MeshKeyHash {
  std::size_t operator()(const MeshKey& key) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int64_t v : key.lattice) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Whitens the state and rounds each coordinate to its box index,
/// half away from zero.
MeshKey compute_key(const StateVector& state, const NormalizationStats& stats, double box_size);

struct MeshEntry {
  int id = 0;
  /// First concrete state that landed in this box; used to re-initialize the
  /// simulator, since the box center may be dynamically infeasible.
  StateVector representative;
  /// One target ID per disturbance, in disturbance-set order. kFailureId
  /// marks transitions into the absorbing failure state.
  std::vector<int> transitions;
};

/// Hash-table mesh over the box lattice: constant-time membership, IDs
/// assigned consecutively in insertion order.
class Mesh {
 public:
  Mesh(double box_size, NormalizationStats stats);

  // by_id_ points into table_ nodes, which survive a container move but not
  // a copy.
  Mesh(const Mesh&) = delete;
  Mesh& operator=(const Mesh&) = delete;
  Mesh(Mesh&&) = default;
  Mesh& operator=(Mesh&&) = default;

  /// Returns (id, true) after inserting an unseen box, or (id, false) for a
  /// box already in the mesh. Existing entries are never modified.
  std::pair<int, bool> insert_or_get(const StateVector& state);

  /// ID for a key already in the mesh, or kFailureId if absent.
  int find(const MeshKey& key) const;

  const StateVector& representative_state(int id) const;

  const MeshEntry& entry(int id) const;
  MeshEntry& entry(int id);
  const MeshKey& key_of(int id) const;

  int size() const { return static_cast<int>(by_id_.size()); }
  double box_size() const { return box_size_; }
  const NormalizationStats& stats() const { return stats_; }

  /// Rebuild hook for deserialization; ids must arrive consecutively from 0.
  void restore_entry(int id, MeshKey key, StateVector representative, std::vector<int> transitions);

 private:
  double box_size_;
  NormalizationStats stats_;
  std::unordered_map<MeshKey, MeshEntry, MeshKeyHash> table_;
  // Pointers into table_ nodes; unordered_map references are insert-stable.
  std::vector<std::pair<const MeshKey*, MeshEntry*>> by_id_;
};

}  // namespace reachmesh
