// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "confband/flow.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace confband {

template <typename Cap>
FlowNetwork<Cap>::FlowNetwork(std::size_t node_count, NodeId source,
                              NodeId sink)
    : node_count_(node_count), source_(source), sink_(sink) {
  if (source >= node_count || sink >= node_count) {
    throw std::invalid_argument("terminal node out of range");
  }
  if (source == sink) throw std::invalid_argument("source equals sink");
}

template <typename Cap>
std::size_t FlowNetwork<Cap>::add_arc(NodeId tail, NodeId head, Cap capacity) {
  if (solved_) throw std::logic_error("network already solved");
  if (tail >= node_count_ || head >= node_count_) {
    throw std::invalid_argument("arc endpoint out of range");
  }
  if (capacity < Cap{0}) throw std::invalid_argument("negative capacity");
  tails_.push_back(tail);
  heads_.push_back(head);
  capacity_.push_back(capacity);
  unbounded_.push_back(false);
  return tails_.size() - 1;
}

template <typename Cap>
std::size_t FlowNetwork<Cap>::add_unbounded_arc(NodeId tail, NodeId head) {
  const std::size_t id = add_arc(tail, head, Cap{0});
  unbounded_[id] = true;
  return id;
}

template <typename Cap>
void FlowNetwork<Cap>::build_adjacency() {
  const std::size_t arcs = tails_.size();
  Cap finite_sum{0};
  Cap largest{0};
  for (std::size_t k = 0; k < arcs; ++k) {
    if (unbounded_[k]) continue;
    if constexpr (std::is_integral_v<Cap>) {
      if (capacity_[k] > std::numeric_limits<Cap>::max() / 4 - finite_sum) {
        throw std::overflow_error("integer capacities overflow");
      }
    }
    finite_sum += capacity_[k];
    largest = std::max(largest, capacity_[k]);
  }
  big_ = finite_sum + Cap{1};
  if constexpr (std::is_floating_point_v<Cap>) {
    eps_ = static_cast<Cap>(tolerance_) * std::max(largest, Cap{1e-300});
  } else {
    eps_ = Cap{0};
  }

  residual_.assign(2 * arcs, Cap{0});
  first_out_.assign(node_count_ + 1, 0);
  for (std::size_t k = 0; k < arcs; ++k) {
    residual_[2 * k] = unbounded_[k] ? big_ : capacity_[k];
    ++first_out_[tails_[k] + 1];
    ++first_out_[heads_[k] + 1];
  }
  for (std::size_t v = 0; v < node_count_; ++v) {
    first_out_[v + 1] += first_out_[v];
  }
  out_arcs_.assign(2 * arcs, 0);
  arc_head_.assign(2 * arcs, 0);
  for (std::size_t k = 0; k < arcs; ++k) {
    arc_head_[2 * k] = heads_[k];
    arc_head_[2 * k + 1] = tails_[k];
  }
  std::vector<std::size_t> fill(first_out_.begin(), first_out_.end() - 1);
  for (std::size_t k = 0; k < arcs; ++k) {
    out_arcs_[fill[tails_[k]]++] = 2 * k;
    out_arcs_[fill[heads_[k]]++] = 2 * k + 1;
  }
}

namespace {

constexpr NodeId kNone = std::numeric_limits<NodeId>::max();

}  // namespace

template <typename Cap>
void FlowNetwork<Cap>::bucket_insert(NodeId v) {
  const std::size_t d = label_[v];
  bucket_prev_[v] = kNone;
  bucket_next_[v] = bucket_head_[d];
  if (bucket_head_[d] != kNone) bucket_prev_[bucket_head_[d]] = v;
  bucket_head_[d] = v;
  max_bucket_ = std::max(max_bucket_, d);
}

template <typename Cap>
void FlowNetwork<Cap>::bucket_remove(NodeId v) {
  const NodeId next = bucket_next_[v];
  const NodeId prev = bucket_prev_[v];
  if (prev == kNone) {
    bucket_head_[label_[v]] = next;
  } else {
    bucket_next_[prev] = next;
  }
  if (next != kNone) bucket_prev_[next] = prev;
}

template <typename Cap>
void FlowNetwork<Cap>::activate(NodeId v) {
  const std::size_t d = label_[v];
  active_next_[v] = active_head_[d];
  active_head_[d] = v;
  max_active_ = std::max(max_active_, d);
}

template <typename Cap>
void FlowNetwork<Cap>::saturate_source_arcs() {
  for (std::size_t p = first_out_[source_]; p < first_out_[source_ + 1]; ++p) {
    const std::size_t r = out_arcs_[p];
    const Cap amount = residual_[r];
    if (amount <= Cap{0}) continue;
    residual_[r] = Cap{0};
    residual_[r ^ 1] += amount;
    excess_[arc_head_[r]] += amount;
    excess_[source_] -= amount;
  }
}

// Exact distances to the sink by reverse breadth-first search; rebuilds
// every bucket and active list.
template <typename Cap>
void FlowNetwork<Cap>::global_relabel() {
  const std::size_t n = node_count_;
  label_.assign(n, n);
  bucket_head_.assign(n, kNone);
  active_head_.assign(n, kNone);
  max_active_ = 0;
  max_bucket_ = 0;
  std::vector<NodeId> queue;
  queue.reserve(n);
  queue.push_back(sink_);
  label_[sink_] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    for (std::size_t p = first_out_[v]; p < first_out_[v + 1]; ++p) {
      const std::size_t r = out_arcs_[p];
      const NodeId u = arc_head_[r];
      if (label_[u] == n && u != source_ && usable(residual_[r ^ 1])) {
        label_[u] = label_[v] + 1;
        queue.push_back(u);
      }
    }
  }
  for (NodeId v : queue) {
    current_[v] = first_out_[v];
    bucket_insert(v);
    if (v != sink_ && active(excess_[v])) activate(v);
  }
}

// Phase one: a maximum preflow. Nodes left with excess cannot reach the sink.
template <typename Cap>
void FlowNetwork<Cap>::discharge_to_sink() {
  const std::size_t n = node_count_;
  global_relabel();
  std::size_t relabels = 0;
  while (true) {
    while (max_active_ > 0 && active_head_[max_active_] == kNone) --max_active_;
    const NodeId u = active_head_[max_active_];
    if (u == kNone) break;
    active_head_[max_active_] = active_next_[u];
    if (label_[u] != max_active_ || !active(excess_[u])) continue;

    while (active(excess_[u])) {
      const std::size_t du = label_[u];
      bool drained = false;
      for (std::size_t& p = current_[u]; p < first_out_[u + 1]; ++p) {
        const std::size_t r = out_arcs_[p];
        const NodeId v = arc_head_[r];
        if (label_[v] + 1 != du || !usable(residual_[r])) continue;
        const Cap amount = std::min(excess_[u], residual_[r]);
        const bool was_active = active(excess_[v]);
        residual_[r] -= amount;
        residual_[r ^ 1] += amount;
        excess_[u] -= amount;
        excess_[v] += amount;
        if (!was_active && v != sink_ && active(excess_[v])) activate(v);
        if (!active(excess_[u])) {
          drained = true;
          break;
        }
      }
      if (drained) break;

      bucket_remove(u);
      if (bucket_head_[du] == kNone) {
        // Gap: nothing above du can reach the sink any more.
        for (std::size_t d = du + 1; d <= max_bucket_; ++d) {
          for (NodeId v = bucket_head_[d]; v != kNone; v = bucket_next_[v]) {
            label_[v] = n;
          }
          bucket_head_[d] = kNone;
        }
        max_bucket_ = du > 0 ? du - 1 : 0;
        label_[u] = n;
        break;
      }
      std::size_t lowest = n;
      for (std::size_t p = first_out_[u]; p < first_out_[u + 1]; ++p) {
        const std::size_t r = out_arcs_[p];
        if (usable(residual_[r])) {
          lowest = std::min(lowest, label_[arc_head_[r]] + 1);
        }
      }
      ++relabels;
      if (lowest >= n) {
        label_[u] = n;
        break;
      }
      label_[u] = lowest;
      current_[u] = first_out_[u];
      bucket_insert(u);
    }

    if (relabels > n) {
      global_relabel();
      relabels = 0;
    }
  }
}

// Phase two: push stranded excess back to the source, turning the maximum
// preflow into a maximum flow without changing the flow into the sink.
template <typename Cap>
void FlowNetwork<Cap>::return_excess() {
  const std::size_t n = node_count_;
  const std::size_t unreached = std::numeric_limits<std::size_t>::max();
  label_.assign(n, unreached);
  std::vector<NodeId> queue;
  queue.reserve(n);
  queue.push_back(source_);
  label_[source_] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    for (std::size_t p = first_out_[v]; p < first_out_[v + 1]; ++p) {
      const std::size_t r = out_arcs_[p];
      const NodeId u = arc_head_[r];
      if (label_[u] == unreached && u != sink_ && usable(residual_[r ^ 1])) {
        label_[u] = label_[v] + 1;
        queue.push_back(u);
      }
    }
  }

  std::deque<NodeId> pending;
  std::vector<bool> queued(n, false);
  for (NodeId v = 0; v < n; ++v) {
    current_[v] = first_out_[v];
    if (v != source_ && v != sink_ && label_[v] != unreached &&
        active(excess_[v])) {
      pending.push_back(v);
      queued[v] = true;
    }
  }
  const std::size_t label_cap = 2 * n;
  while (!pending.empty()) {
    const NodeId u = pending.front();
    pending.pop_front();
    queued[u] = false;
    while (active(excess_[u])) {
      bool drained = false;
      for (std::size_t& p = current_[u]; p < first_out_[u + 1]; ++p) {
        const std::size_t r = out_arcs_[p];
        const NodeId v = arc_head_[r];
        if (v == sink_ || label_[v] + 1 != label_[u] || !usable(residual_[r])) {
          continue;
        }
        const Cap amount = std::min(excess_[u], residual_[r]);
        residual_[r] -= amount;
        residual_[r ^ 1] += amount;
        excess_[u] -= amount;
        excess_[v] += amount;
        if (v != source_ && !queued[v] && active(excess_[v])) {
          pending.push_back(v);
          queued[v] = true;
        }
        if (!active(excess_[u])) {
          drained = true;
          break;
        }
      }
      if (drained) break;
      std::size_t lowest = unreached;
      for (std::size_t p = first_out_[u]; p < first_out_[u + 1]; ++p) {
        const std::size_t r = out_arcs_[p];
        const NodeId v = arc_head_[r];
        if (v != sink_ && label_[v] != unreached && usable(residual_[r])) {
          lowest = std::min(lowest, label_[v] + 1);
        }
      }
      // Only rounding residue can be stranded here; leave it in place.
      if (lowest == unreached || lowest > label_cap) break;
      label_[u] = lowest;
      current_[u] = first_out_[u];
    }
  }
}

template <typename Cap>
Cap FlowNetwork<Cap>::max_flow() {
  if (solved_) return flow_;
  build_adjacency();
  const std::size_t n = node_count_;
  excess_.assign(n, Cap{0});
  current_.assign(first_out_.begin(), first_out_.end() - 1);
  active_next_.assign(n, kNone);
  bucket_next_.assign(n, kNone);
  bucket_prev_.assign(n, kNone);
  saturate_source_arcs();
  discharge_to_sink();
  return_excess();
  flow_ = excess_[sink_];
  solved_ = true;
  return flow_;
}

template <typename Cap>
void FlowNetwork<Cap>::require_solved() const {
  if (!solved_) throw std::logic_error("residual unavailable");
}

template <typename Cap>
Cap FlowNetwork<Cap>::flow_value() const {
  require_solved();
  return flow_;
}

template <typename Cap>
CutResult<Cap> FlowNetwork<Cap>::min_cut_min_side() const {
  require_solved();
  CutResult<Cap> cut{flow_, std::vector<bool>(node_count_, false)};
  std::vector<NodeId> queue{source_};
  cut.source_side[source_] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (std::size_t p = first_out_[u]; p < first_out_[u + 1]; ++p) {
      const std::size_t r = out_arcs_[p];
      const NodeId v = arc_head_[r];
      if (!cut.source_side[v] && usable(residual_[r])) {
        cut.source_side[v] = true;
        queue.push_back(v);
      }
    }
  }
  return cut;
}

template <typename Cap>
CutResult<Cap> FlowNetwork<Cap>::min_cut_max_side() const {
  require_solved();
  std::vector<bool> reaches_sink(node_count_, false);
  std::vector<NodeId> queue{sink_};
  reaches_sink[sink_] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    // For each residual arc r out of v, r ^ 1 runs from head(r) into v.
    for (std::size_t p = first_out_[v]; p < first_out_[v + 1]; ++p) {
      const std::size_t r = out_arcs_[p];
      const NodeId u = arc_head_[r];
      if (!reaches_sink[u] && usable(residual_[r ^ 1])) {
        reaches_sink[u] = true;
        queue.push_back(u);
      }
    }
  }
  CutResult<Cap> cut{flow_, std::vector<bool>(node_count_, false)};
  for (std::size_t v = 0; v < node_count_; ++v) {
    cut.source_side[v] = !reaches_sink[v];
  }
  return cut;
}

template <typename Cap>
Cap FlowNetwork<Cap>::cut_capacity(const std::vector<bool>& source_side) const {
  require_solved();
  if (source_side.size() != node_count_) {
    throw std::invalid_argument("cut size mismatch");
  }
  Cap total{0};
  for (std::size_t k = 0; k < tails_.size(); ++k) {
    if (source_side[tails_[k]] && !source_side[heads_[k]]) {
      total += unbounded_[k] ? big_ : capacity_[k];
    }
  }
  return total;
}

template <typename Cap>
Cap FlowNetwork<Cap>::arc_capacity(std::size_t arc) const {
  if (unbounded_[arc]) {
    require_solved();
    return big_;
  }
  return capacity_[arc];
}

template <typename Cap>
Cap FlowNetwork<Cap>::arc_flow(std::size_t arc) const {
  require_solved();
  return arc_capacity(arc) - residual_[2 * arc];
}

template class FlowNetwork<double>;
template class FlowNetwork<std::int64_t>;

}  // namespace confband
