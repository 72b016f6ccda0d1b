#include "reachmesh/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace reachmesh {

MeshKey compute_key(const StateVector& state, const NormalizationStats& stats, double box_size) {
  if (state.size() != stats.dim())
    throw std::invalid_argument("compute_key: state dimension " + std::to_string(state.size()) +
                                " does not match stats dimension " + std::to_string(stats.dim()));
  if (!(box_size > 0.0)) throw std::invalid_argument("compute_key: box_size must be positive");
  if (!all_finite(state)) throw std::invalid_argument("compute_key: non-finite state");

  MeshKey key;
  key.lattice.resize(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    double whitened = (state[i] - stats.mean[i]) / stats.std[i];
    // llround rounds halfway cases away from zero, keeping box membership
    // symmetric under sign flips.
    key.lattice[i] = std::llround(whitened / box_size);
  }
  return key;
}

Mesh::Mesh(double box_size, NormalizationStats stats)
    : box_size_(box_size), stats_(std::move(stats)) {
  if (!(box_size_ > 0.0)) throw std::invalid_argument("mesh: box_size must be positive");
  stats_.validate();
}

std::pair<int, bool> Mesh::insert_or_get(const StateVector& state) {
  if (!all_finite(state)) throw std::invalid_argument("mesh: non-finite state");
  MeshKey key = compute_key(state, stats_, box_size_);
  auto it = table_.find(key);
  if (it != table_.end()) return {it->second.id, false};

  int id = static_cast<int>(by_id_.size());
  auto [node, inserted] = table_.emplace(std::move(key), MeshEntry{id, state, {}});
  by_id_.emplace_back(&node->first, &node->second);
  return {id, true};
}

int Mesh::find(const MeshKey& key) const {
  auto it = table_.find(key);
  return it == table_.end() ? kFailureId : it->second.id;
}

const StateVector& Mesh::representative_state(int id) const {
  return entry(id).representative;
}

const MeshEntry& Mesh::entry(int id) const {
  if (id < 0 || id >= size())
    throw std::out_of_range("mesh: unknown state id " + std::to_string(id));
  return *by_id_[static_cast<std::size_t>(id)].second;
}

MeshEntry& Mesh::entry(int id) {
  if (id < 0 || id >= size())
    throw std::out_of_range("mesh: unknown state id " + std::to_string(id));
  return *by_id_[static_cast<std::size_t>(id)].second;
}

const MeshKey& Mesh::key_of(int id) const {
  if (id < 0 || id >= size())
    throw std::out_of_range("mesh: unknown state id " + std::to_string(id));
  return *by_id_[static_cast<std::size_t>(id)].first;
}

void Mesh::restore_entry(int id, MeshKey key, StateVector representative,
                         std::vector<int> transitions) {
  if (id != size())
    throw std::invalid_argument("mesh: restored ids must be consecutive from zero");
  auto [node, inserted] =
      table_.emplace(std::move(key), MeshEntry{id, std::move(representative), std::move(transitions)});
  if (!inserted) throw std::invalid_argument("mesh: duplicate key in restored entries");
  by_id_.emplace_back(&node->first, &node->second);
}

}  // namespace reachmesh
