#include "rslab/core/type_enum.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "rslab/core/error.hpp"

namespace rslab {

namespace {

struct Slot {
  RelIndex rel;
  std::vector<Vertex> vertices;
};

void combinations(Vertex size, std::size_t k, std::vector<Vertex>& cur, Vertex start,
                  std::vector<std::vector<Vertex>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (Vertex v = start; v < size; ++v) {
    cur.push_back(v);
    combinations(size, k, cur, v + 1, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Structure> enumerate_types(const SignaturePtr& sig, Vertex size, Vertex base_size) {
  if (base_size > size) fail(ErrorCode::invalid_argument, "base larger than structure");
  std::vector<Slot> slots;
  std::map<std::pair<RelIndex, std::vector<Vertex>>, std::size_t> slot_index;
  for (RelIndex i = 0; i < sig->size(); ++i) {
    std::vector<std::vector<Vertex>> combos;
    std::vector<Vertex> cur;
    combinations(size, sig->relation(i).arity, cur, 0, combos);
    for (auto& c : combos) {
      slot_index[{i, c}] = slots.size();
      slots.push_back({i, std::move(c)});
    }
  }
  if (slots.size() > 20) fail(ErrorCode::limit, "too many hyperedge slots for type enumeration");

  // Permutations mapping the base onto itself.
  std::vector<std::vector<Vertex>> perms;
  {
    std::vector<Vertex> base(base_size), rest(size - base_size);
    std::iota(base.begin(), base.end(), Vertex{0});
    std::iota(rest.begin(), rest.end(), base_size);
    do {
      std::vector<Vertex> r = rest;
      do {
        std::vector<Vertex> p = base;
        p.insert(p.end(), r.begin(), r.end());
        perms.push_back(std::move(p));
      } while (std::next_permutation(r.begin(), r.end()));
    } while (std::next_permutation(base.begin(), base.end()));
  }
  const std::uint64_t codes = std::uint64_t{1} << slots.size();
  if (static_cast<double>(codes) * static_cast<double>(perms.size()) * static_cast<double>(slots.size()) > 2e8) {
    fail(ErrorCode::limit, "type enumeration too large");
  }

  // Slot permutation tables.
  std::vector<std::vector<std::size_t>> slot_perm(perms.size(), std::vector<std::size_t>(slots.size()));
  for (std::size_t p = 0; p < perms.size(); ++p) {
    for (std::size_t s = 0; s < slots.size(); ++s) {
      std::vector<Vertex> img;
      for (Vertex v : slots[s].vertices) img.push_back(perms[p][v]);
      std::sort(img.begin(), img.end());
      slot_perm[p][s] = slot_index.at({slots[s].rel, img});
    }
  }

  std::vector<Structure> out;
  for (std::uint64_t code = 0; code < codes; ++code) {
    bool canonical = true;
    for (std::size_t p = 1; p < perms.size() && canonical; ++p) {
      std::uint64_t img = 0;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (code >> s & 1) img |= std::uint64_t{1} << slot_perm[p][s];
      }
      if (img < code) canonical = false;
    }
    if (!canonical) continue;
    std::vector<std::vector<Hyperedge>> edges(sig->size());
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (code >> s & 1) edges[slots[s].rel].push_back(slots[s].vertices);
    }
    out.emplace_back(sig, size, edges);
  }
  return out;
}

}  // namespace rslab
