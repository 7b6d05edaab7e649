#include "dyno/pseudo_split.hpp"

#include <algorithm>

namespace dyno {

PseudoSplit::PseudoSplit(int n) : deg_(n, 0), slots_(n) {}

void PseudoSplit::ensure(EdgeId e) {
  if (e >= static_cast<EdgeId>(part_.size()))
    part_.resize(std::max<std::size_t>(e + 1, part_.size() * 2), -1);
}

void PseudoSplit::put(Vertex v, int i, EdgeId e) {
  if (resolver_) return;
  auto& s = slots_[v];
  if (static_cast<int>(s.size()) <= i) s.resize(i + 1, kNoEdge);
  s[i] = e;
}

void PseudoSplit::drop(Vertex v, int i) {
  if (resolver_) return;
  auto& s = slots_[v];
  s[i] = kNoEdge;
  while (!s.empty() && s.back() == kNoEdge) s.pop_back();
}

int PseudoSplit::partition_of(EdgeId e) const {
  if (!assigned(e)) throw NotFoundError("edge has no partition");
  return part_[e];
}

EdgeId PseudoSplit::out_edge(Vertex v, int i) const {
  if (i < 0 || i >= deg_[v]) return kNoEdge;
  if (resolver_) return resolver_(v, i);
  return i < static_cast<int>(slots_[v].size()) ? slots_[v][i] : kNoEdge;
}

MoveLog PseudoSplit::on_insert(EdgeId e, Vertex tail) {
  ensure(e);
  if (part_[e] >= 0) throw ConsistencyError("edge already assigned");
  int i = deg_[tail]++;
  part_[e] = i;
  put(tail, i, e);
  ++total_moves_;
  return {Move{e, tail, -1, i}};
}

MoveLog PseudoSplit::on_delete(EdgeId e, Vertex tail) {
  if (!assigned(e)) throw NotFoundError("edge has no partition");
  int i = part_[e];
  int last = deg_[tail] - 1;
  MoveLog log{Move{e, tail, i, -1}};
  if (i != last) {
    EdgeId f = out_edge(tail, last);
    if (f == kNoEdge || part_[f] != last) throw ConsistencyError("slot table out of sync");
    part_[f] = i;
    drop(tail, last);
    put(tail, i, f);
    log.push_back(Move{f, tail, last, i});
  } else {
    drop(tail, i);
  }
  part_[e] = -1;
  --deg_[tail];
  total_moves_ += static_cast<long long>(log.size());
  return log;
}

MoveLog PseudoSplit::on_reorient(EdgeId e, Vertex old_tail, Vertex new_tail) {
  MoveLog del = on_delete(e, old_tail);
  MoveLog ins = on_insert(e, new_tail);
  total_moves_ -= 1;
  MoveLog log{Move{e, new_tail, del[0].from, ins[0].to}};
  for (std::size_t k = 1; k < del.size(); ++k) log.push_back(del[k]);
  return log;
}

void PseudoSplit::swap_parts(EdgeId a, EdgeId b) {
  if (!assigned(a) || !assigned(b)) throw NotFoundError("edge has no partition");
  std::swap(part_[a], part_[b]);
  total_moves_ += 2;
}

int PseudoSplit::partitions_used() const {
  int m = 0;
  for (int d : deg_) m = std::max(m, d);
  return m;
}

std::vector<EdgeId> PseudoSplit::edges_in(int i) const {
  std::vector<EdgeId> r;
  for (EdgeId e = 0; e < static_cast<EdgeId>(part_.size()); ++e)
    if (part_[e] == i) r.push_back(e);
  return r;
}

void PseudoSplit::check(const std::vector<std::pair<EdgeId, Vertex>>& oriented) const {
  std::vector<std::vector<int>> seen(deg_.size());
  std::size_t assigned_count = 0;
  for (int p : part_)
    if (p >= 0) ++assigned_count;
  if (assigned_count != oriented.size()) throw ConsistencyError("assigned edge count differs");
  for (auto [e, t] : oriented) {
    if (!assigned(e)) throw ConsistencyError("oriented edge without partition");
    seen[t].push_back(part_[e]);
  }
  for (std::size_t v = 0; v < deg_.size(); ++v) {
    auto& s = seen[v];
    std::sort(s.begin(), s.end());
    if (static_cast<int>(s.size()) != deg_[v]) throw ConsistencyError("out-degree count differs");
    for (int k = 0; k < static_cast<int>(s.size()); ++k)
      if (s[k] != k) throw ConsistencyError("out-edges do not fill a slot prefix");
  }
}

}  // namespace dyno
