#include "ff/fusion.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ff/caps.hpp"
#include "src/fusion/internal.hpp"

namespace ff {

namespace detail {

int member_pos(const std::vector<int>& members, int x) {
  auto it = std::lower_bound(members.begin(), members.end(), x);
  if (it == members.end() || *it != x) return -1;
  return static_cast<int>(it - members.begin());
}

std::uint64_t mask_of_members(const std::vector<int>& members) {
  std::uint64_t m = 0;
  for (int x : members) m |= std::uint64_t{1} << x;
  return m;
}

std::uint64_t image_mask_of(const std::vector<std::uint8_t>& images) {
  std::uint64_t m = 0;
  for (std::uint8_t v : images) m |= std::uint64_t{1} << v;
  return m;
}

void seal_homset(const FusionSystem& f, int dom,
                 const std::set<std::vector<std::uint8_t>>& graphs,
                 std::vector<FMor>* out) {
  out->clear();
  out->reserve(graphs.size());
  for (const auto& g : graphs) {
    FMor m;
    m.dom = static_cast<std::uint16_t>(dom);
    m.images = g;
    m.image_mask = image_mask_of(g);
    int cod = f.sub_of_mask(m.image_mask);
    if (cod < 0) throw std::logic_error("morphism image is not a subgroup");
    m.cod = static_cast<std::uint16_t>(cod);
    out->push_back(std::move(m));
  }
  // std::set iteration is already sorted by images; doms are equal.
}

int join_sub(const FusionSystem& f, int a, int b) {
  if (!(f.masks[a] & ~f.masks[b])) return b;
  if (!(f.masks[b] & ~f.masks[a])) return a;
  Subgroup j = join(f.subs[a], f.subs[b]);
  int idx = f.sub_of_mask(mask_of_members(j.members));
  if (idx < 0) throw std::logic_error("join missing from the subgroup lattice");
  return idx;
}

}  // namespace detail

using detail::image_mask_of;
using detail::mask_of_members;
using detail::member_pos;
using detail::seal_homset;

int FusionSystem::sub_of_mask(std::uint64_t mask) const {
  auto it = sub_index.find(mask);
  return it == sub_index.end() ? -1 : it->second;
}

int FusionSystem::total_morphisms() const {
  int n = 0;
  for (const auto& ms : mors) n += static_cast<int>(ms.size());
  return n;
}

FusionSystem fusion_skeleton(std::shared_ptr<const Group> s, int p) {
  if (s->size() > 64)
    throw CapError("ambient p-group larger than 64 elements");
  FusionSystem f;
  f.S = std::move(s);
  f.p = p;
  f.subs = all_subgroups(*f.S);
  f.masks.reserve(f.subs.size());
  for (int i = 0; i < static_cast<int>(f.subs.size()); ++i) {
    f.masks.push_back(mask_of_members(f.subs[i].members));
    f.sub_index.emplace(f.masks.back(), i);
  }
  f.mors.resize(f.subs.size());
  return f;
}

FusionSystem fusion_of_group(const Group& g, int p, const Subgroup& s) {
  int ppart = 1;
  for (int n = g.size(); n % p == 0; n /= p) ppart *= p;
  if (s.size() != ppart)
    throw std::invalid_argument("subgroup is not a Sylow p-subgroup");

  std::vector<int> to_parent;
  auto sg = std::make_shared<Group>(subgroup_as_group(s, &to_parent));
  FusionSystem f = fusion_skeleton(sg, p);
  int m = sg->size();

  // Deduplicate the partial maps x -> g x g^-1 (0xFF marks "leaves S"), then
  // restrict each distinct map to every subgroup inside its domain.
  std::set<std::vector<std::uint8_t>> partials;
  for (int gid = 0; gid < g.size(); ++gid) {
    std::vector<std::uint8_t> pm(m, 0xFF);
    for (int k = 0; k < m; ++k) {
      int y = g.conj(gid, to_parent[k]);
      int pos = member_pos(s.members, y);
      if (pos >= 0) pm[k] = static_cast<std::uint8_t>(pos);
    }
    partials.insert(std::move(pm));
  }

  std::vector<std::set<std::vector<std::uint8_t>>> graphs(f.subs.size());
  for (const auto& pm : partials) {
    std::uint64_t dom = 0;
    for (int k = 0; k < m; ++k)
      if (pm[k] != 0xFF) dom |= std::uint64_t{1} << k;
    for (int i = 0; i < f.sub_count(); ++i) {
      if (f.masks[i] & ~dom) continue;
      std::vector<std::uint8_t> img;
      img.reserve(f.subs[i].members.size());
      for (int x : f.subs[i].members) img.push_back(pm[x]);
      graphs[i].insert(std::move(img));
    }
  }
  for (int i = 0; i < f.sub_count(); ++i) seal_homset(f, i, graphs[i], &f.mors[i]);
  return f;
}

FusionSystem fusion_of_group(const Group& g, int p) {
  return fusion_of_group(g, p, sylow(g, p));
}

FusionSystem fusion_of_p_group(std::shared_ptr<const Group> s, int p) {
  const Group& g = *s;
  return fusion_of_group(g, p, whole_group(g));
}

// --- morphism utilities -------------------------------------------------------

FMor morphism_from_images(const FusionSystem& f, int dom,
                          std::vector<std::uint8_t> images) {
  const auto& members = f.subs[dom].members;
  if (images.size() != members.size())
    throw std::invalid_argument("image list does not match the domain");
  std::uint64_t im = image_mask_of(images);
  if (static_cast<int>(images.size()) !=
      static_cast<int>(__builtin_popcountll(im)))
    throw std::invalid_argument("map is not injective");
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = 0; b < members.size(); ++b) {
      int prod = f.S->mul(members[a], members[b]);
      int pos = member_pos(members, prod);
      if (pos < 0 || f.S->mul(images[a], images[b]) != images[pos])
        throw std::invalid_argument("map is not a homomorphism");
    }
  FMor out;
  out.dom = static_cast<std::uint16_t>(dom);
  out.images = std::move(images);
  out.image_mask = im;
  int cod = f.sub_of_mask(im);
  if (cod < 0) throw std::logic_error("morphism image is not a subgroup");
  out.cod = static_cast<std::uint16_t>(cod);
  return out;
}

FMor identity_morphism(const FusionSystem& f, int sub) {
  FMor out;
  out.dom = out.cod = static_cast<std::uint16_t>(sub);
  out.image_mask = f.masks[sub];
  out.images.reserve(f.subs[sub].members.size());
  for (int x : f.subs[sub].members)
    out.images.push_back(static_cast<std::uint8_t>(x));
  return out;
}

FMor restrict_morphism(const FusionSystem& f, const FMor& m, int sub) {
  if (f.masks[sub] & ~f.masks[m.dom])
    throw std::logic_error("restriction target is not inside the domain");
  const auto& big = f.subs[m.dom].members;
  FMor out;
  out.dom = static_cast<std::uint16_t>(sub);
  out.images.reserve(f.subs[sub].members.size());
  for (int x : f.subs[sub].members)
    out.images.push_back(m.images[member_pos(big, x)]);
  out.image_mask = image_mask_of(out.images);
  int cod = f.sub_of_mask(out.image_mask);
  if (cod < 0) throw std::logic_error("morphism image is not a subgroup");
  out.cod = static_cast<std::uint16_t>(cod);
  return out;
}

FMor compose_morphisms(const FusionSystem& f, const FMor& outer,
                       const FMor& inner) {
  if (inner.image_mask & ~f.masks[outer.dom])
    throw std::logic_error("composite undefined: image escapes the domain");
  const auto& mid = f.subs[outer.dom].members;
  FMor out;
  out.dom = inner.dom;
  out.images.reserve(inner.images.size());
  for (std::uint8_t v : inner.images)
    out.images.push_back(outer.images[member_pos(mid, v)]);
  out.image_mask = image_mask_of(out.images);
  int cod = f.sub_of_mask(out.image_mask);
  if (cod < 0) throw std::logic_error("morphism image is not a subgroup");
  out.cod = static_cast<std::uint16_t>(cod);
  return out;
}

FMor invert_morphism(const FusionSystem& f, const FMor& m) {
  const auto& dmem = f.subs[m.dom].members;
  const auto& cmem = f.subs[m.cod].members;
  FMor out;
  out.dom = m.cod;
  out.cod = m.dom;
  out.image_mask = f.masks[m.dom];
  out.images.resize(cmem.size());
  for (std::size_t k = 0; k < dmem.size(); ++k)
    out.images[member_pos(cmem, m.images[k])] =
        static_cast<std::uint8_t>(dmem[k]);
  return out;
}

bool has_morphism(const FusionSystem& f, const FMor& m) {
  const auto& ms = f.mors[m.dom];
  return std::binary_search(ms.begin(), ms.end(), m);
}

std::vector<FMor> homs_between(const FusionSystem& f, int p_sub, int q_sub) {
  std::vector<FMor> out;
  for (const FMor& m : f.mors[p_sub])
    if (!(m.image_mask & ~f.masks[q_sub])) out.push_back(m);
  return out;
}

std::vector<FMor> aut_morphisms(const FusionSystem& f, int sub) {
  std::vector<FMor> out;
  for (const FMor& m : f.mors[sub])
    if (m.image_mask == f.masks[sub]) out.push_back(m);
  return out;
}

Group fusion_aut_group(const FusionSystem& f, int sub) {
  const auto& members = f.subs[sub].members;
  int n = static_cast<int>(members.size());
  std::vector<Perm> perms;
  for (const FMor& m : f.mors[sub]) {
    if (m.image_mask != f.masks[sub]) continue;
    Perm perm(n);
    for (int k = 0; k < n; ++k)
      perm[k] = static_cast<std::uint16_t>(member_pos(members, m.images[k]));
    perms.push_back(std::move(perm));
  }
  return group_from_elements(n, std::move(perms));
}

// --- generate_fusion ------------------------------------------------------------

FusionSystem generate_fusion(std::shared_ptr<const Group> s, int p,
                             const std::vector<AutSeed>& seeds) {
  FusionSystem f = fusion_skeleton(std::move(s), p);
  int top = f.s_sub();

  std::vector<std::set<std::vector<std::uint8_t>>> graphs(f.subs.size());
  std::vector<FMor> accepted;
  std::vector<FMor> work;
  long long total = 0;

  auto push = [&](FMor m) {
    if (!graphs[m.dom].insert(m.images).second) return;
    if (static_cast<std::size_t>(++total) > caps().budget)
      throw CapError("fusion closure exceeded the morphism budget");
    work.push_back(std::move(m));
  };

  // Inner maps: every conjugation automorphism of S (restrictions follow
  // from the closure below).
  for (int g = 0; g < f.S->size(); ++g) {
    std::vector<std::uint8_t> img(f.S->size());
    for (int x = 0; x < f.S->size(); ++x)
      img[x] = static_cast<std::uint8_t>(f.S->conj(g, x));
    FMor m;
    m.dom = m.cod = static_cast<std::uint16_t>(top);
    m.image_mask = f.masks[top];
    m.images = std::move(img);
    push(std::move(m));
  }
  for (const AutSeed& seed : seeds) {
    int dom = f.sub_of_mask(mask_of_members(seed.domain));
    if (dom < 0 || f.subs[dom].members != seed.domain)
      throw std::invalid_argument("seed domain is not a subgroup of S");
    push(morphism_from_images(f, dom, seed.images));
  }

  while (!work.empty()) {
    FMor m = std::move(work.back());
    work.pop_back();
    // Restrictions to every proper subgroup of the domain.
    for (int j = 0; j < f.sub_count(); ++j)
      if (j != m.dom && !(f.masks[j] & ~f.masks[m.dom]))
        push(restrict_morphism(f, m, j));
    // Inverse of the isomorphism onto the image.
    push(invert_morphism(f, m));
    // Composites with everything accepted so far (both orders).
    for (const FMor& n : accepted) {
      if (!(m.image_mask & ~f.masks[n.dom])) push(compose_morphisms(f, n, m));
      if (!(n.image_mask & ~f.masks[m.dom])) push(compose_morphisms(f, m, n));
    }
    if (!(m.image_mask & ~f.masks[m.dom])) push(compose_morphisms(f, m, m));
    accepted.push_back(std::move(m));
  }

  for (int i = 0; i < f.sub_count(); ++i) seal_homset(f, i, graphs[i], &f.mors[i]);
  return f;
}

}  // namespace ff
