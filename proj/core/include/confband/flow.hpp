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

#ifndef CONFBAND_FLOW_HPP
#define CONFBAND_FLOW_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace confband {

using NodeId = std::uint32_t;

template <typename Cap>
struct CutResult {
  Cap flow_value{};
  /// source_side[v] is true iff v lies on the source side X.
  std::vector<bool> source_side;

  bool contains(NodeId v) const { return source_side[v]; }
  std::vector<NodeId> nodes() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < source_side.size(); ++v)
      if (source_side[v]) out.push_back(v);
    return out;
  }
};

/*
 * Directed capacitated graph with a designated source and sink, solved by
 * highest-label push-relabel with global relabeling and the gap heuristic.
 * A second pass returns stranded excess to the source, so the result is a
 * proper maximum flow and both extreme minimum cuts can be read off it.
 *
 * Arcs added with add_unbounded_arc() stand in for infinite capacity. Before
 * solving they receive BIG = 1 + (sum of finite capacities), so they can
 * never be part of a finite minimum cut.
 *
 * Cap is either double (residual capacities at or below `tolerance * scale`
 * count as saturated, where scale is the largest finite capacity) or a
 * signed integer type (exact arithmetic).
 */
template <typename Cap>
class FlowNetwork {
  static_assert(std::is_arithmetic_v<Cap> && std::is_signed_v<Cap>);

 public:
  FlowNetwork(std::size_t node_count, NodeId source, NodeId sink);

  NodeId source() const { return source_; }
  NodeId sink() const { return sink_; }
  std::size_t node_count() const { return node_count_; }
  std::size_t arc_count() const { return tails_.size(); }

  /// Returns the arc index. Capacity must be non-negative.
  std::size_t add_arc(NodeId tail, NodeId head, Cap capacity);
  std::size_t add_unbounded_arc(NodeId tail, NodeId head);

  /// Only meaningful for floating capacities.
  void set_tolerance(double relative) { tolerance_ = relative; }

  /// Computes a maximum source-to-sink flow. Arcs cannot be added afterwards.
  Cap max_flow();

  bool solved() const { return solved_; }
  Cap flow_value() const;
  Cap big() const { return big_; }

  /// Nodes reachable from the source in the residual graph: the unique
  /// inclusion-minimal source side of a minimum cut.
  CutResult<Cap> min_cut_min_side() const;
  /// Nodes that cannot reach the sink in the residual graph: the unique
  /// inclusion-maximal source side of a minimum cut.
  CutResult<Cap> min_cut_max_side() const;

  /// Capacity of the arcs leaving `source_side`, with unbounded arcs at BIG.
  /// Requires max_flow() (BIG is fixed there).
  Cap cut_capacity(const std::vector<bool>& source_side) const;

  /// Flow carried by arc `arc` after max_flow().
  Cap arc_flow(std::size_t arc) const;
  Cap arc_capacity(std::size_t arc) const;
  bool arc_unbounded(std::size_t arc) const { return unbounded_[arc]; }
  NodeId arc_tail(std::size_t arc) const { return tails_[arc]; }
  NodeId arc_head(std::size_t arc) const { return heads_[arc]; }

 private:
  bool usable(Cap residual) const { return residual > eps_; }
  void build_adjacency();
  bool active(Cap excess) const { return excess > eps_; }
  void saturate_source_arcs();
  void push(std::size_t r, Cap amount);
  void global_relabel();
  void discharge_to_sink();
  void return_excess();
  void bucket_insert(NodeId v);
  void bucket_remove(NodeId v);
  void activate(NodeId v);
  void require_solved() const;

  std::size_t node_count_;
  NodeId source_;
  NodeId sink_;

  // Input arcs in insertion order.
  std::vector<NodeId> tails_;
  std::vector<NodeId> heads_;
  std::vector<Cap> capacity_;
  std::vector<bool> unbounded_;

  // Residual arcs: 2k is forward of input arc k, 2k+1 its reverse.
  std::vector<Cap> residual_;
  std::vector<std::size_t> first_out_;  // CSR offsets, size node_count + 1
  std::vector<std::size_t> out_arcs_;   // residual arc ids grouped by tail
  std::vector<NodeId> arc_head_;        // head of each residual arc

  // Push-relabel state. Labels are distances to the sink; node_count_ means
  // the node cannot reach it.
  std::vector<std::size_t> label_;
  std::vector<Cap> excess_;
  std::vector<std::size_t> current_;
  std::vector<NodeId> active_head_;  // per label, linked through active_next_
  std::vector<NodeId> active_next_;
  std::vector<NodeId> bucket_head_;  // per label, all nodes with that label
  std::vector<NodeId> bucket_next_;
  std::vector<NodeId> bucket_prev_;
  std::size_t max_active_ = 0;
  std::size_t max_bucket_ = 0;

  Cap big_{};
  Cap flow_{};
  Cap eps_{};
  double tolerance_ = 1e-9;
  bool solved_ = false;
};

extern template class FlowNetwork<double>;
extern template class FlowNetwork<std::int64_t>;

}  // namespace confband

#endif  // CONFBAND_FLOW_HPP
