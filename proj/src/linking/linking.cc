#include <algorithm>
#include <cassert>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ff/linking.hpp"
#include "src/fusion/internal.hpp"
#include "src/linking/internal.hpp"

namespace ff {

using detail::delta_key;
using detail::rep_key;

// --- queries -------------------------------------------------------------------

int LinkingSystem::canon_rep(int a, int t) const {
  int best = t;
  for (int k : kernel[a]) best = std::min(best, g->mul(t, k));
  return best;
}

int LinkingSystem::compose(int outer, int inner) const {
  if (mors[inner].cod != mors[outer].dom)
    throw std::logic_error("composition of non-adjacent morphisms");
  if (kind == 0) {
    int a = mors[inner].dom;
    int r = canon_rep(a, g->mul(rep[outer], rep[inner]));
    auto it = rep_id.find(rep_key(*this, a, mors[outer].cod, r));
    return it == rep_id.end() ? -1 : it->second;
  }
  const int mr = right->morphism_count();
  int lo = left->compose(outer / mr, inner / mr);
  int ro = right->compose(outer % mr, inner % mr);
  return lo < 0 || ro < 0 ? -1 : lo * mr + ro;
}

int LinkingSystem::delta(int a, int b, int s_elem) const {
  auto it = delta_id.find(delta_key(*this, a, b, s_elem));
  return it == delta_id.end() ? -1 : it->second;
}

// --- transporter model -----------------------------------------------------------

LinkingSystem linking_of_group(const Group& g, int p,
                               std::shared_ptr<const FusionSystem> f,
                               const Subgroup& s_in_g,
                               std::vector<int> objects) {
  LinkingSystem l;
  l.fsys = std::move(f);
  l.p = p;
  std::sort(objects.begin(), objects.end());
  l.objects = std::move(objects);
  l.object_index.assign(l.fsys->sub_count(), -1);
  for (int i = 0; i < l.object_count(); ++i) l.object_index[l.objects[i]] = i;
  l.kind = 0;
  l.g = std::make_shared<Group>(g);

  const FusionSystem& fs = *l.fsys;
  if (s_in_g.size() != fs.S->size())
    throw std::invalid_argument("Sylow subgroup does not match the system's S");
  l.g_elem_of_s.resize(fs.S->size());
  for (int k = 0; k < fs.S->size(); ++k) {
    l.g_elem_of_s[k] = l.g->id_of(fs.S->elems[k]);
    if (l.g_elem_of_s[k] < 0 || !s_in_g.contains_id(l.g_elem_of_s[k]))
      throw std::invalid_argument("S is not embedded in the ambient group");
  }

  std::vector<int> s_elem_of_g(l.g->size(), -1);
  for (int k = 0; k < fs.S->size(); ++k) s_elem_of_g[l.g_elem_of_s[k]] = k;

  const int no = l.object_count();
  l.obj_members_g.resize(no);
  l.kernel.resize(no);
  std::vector<Subgroup> obj_sub_g(no);
  for (int i = 0; i < no; ++i) {
    std::vector<int> mem;
    for (int x : fs.subs[l.objects[i]].members)
      mem.push_back(l.g_elem_of_s[x]);
    std::sort(mem.begin(), mem.end());
    obj_sub_g[i] = Subgroup{l.g.get(), mem};
    l.obj_members_g[i] = std::move(mem);
    Subgroup c = centralizer_sub(*l.g, obj_sub_g[i]);
    l.kernel[i] = residual_p(*l.g, c, p).members;
  }

  l.hom.assign(no, std::vector<std::vector<int>>(no));
  for (int a = 0; a < no; ++a) {
    const std::vector<int>& dom_mem = fs.subs[l.objects[a]].members;
    for (int b = 0; b < no; ++b) {
      std::vector<int> reps;
      for (int t : transporter(*l.g, obj_sub_g[a], obj_sub_g[b]))
        reps.push_back(l.canon_rep(a, t));
      std::sort(reps.begin(), reps.end());
      reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
      for (int r : reps) {
        int id = l.morphism_count();
        l.mors.push_back(LMor{a, b});
        l.rep.push_back(r);
        l.rep_id.emplace(rep_key(l, a, b, r), id);
        l.hom[a][b].push_back(id);
        std::vector<std::uint8_t> images(dom_mem.size());
        for (std::size_t k = 0; k < dom_mem.size(); ++k) {
          int gi = l.g->conj(r, l.g_elem_of_s[dom_mem[k]]);
          images[k] = static_cast<std::uint8_t>(s_elem_of_g[gi]);
        }
        l.pi.push_back(morphism_from_images(fs, l.objects[a], std::move(images)));
      }
    }
  }

  for (int a = 0; a < no; ++a)
    for (int b = 0; b < no; ++b) {
      const std::vector<int>& dm = l.obj_members_g[a];
      for (int x = 0; x < fs.S->size(); ++x) {
        int t = l.g_elem_of_s[x];
        bool carries = true;
        for (int m : dm)
          if (!obj_sub_g[b].contains_id(l.g->conj(t, m))) {
            carries = false;
            break;
          }
        if (!carries) continue;
        auto it = l.rep_id.find(rep_key(l, a, b, l.canon_rep(a, t)));
        if (it == l.rep_id.end())
          throw std::logic_error("transporter element missing from homset");
        l.delta_id.emplace(delta_key(l, a, b, x), it->second);
      }
    }

  l.identity_mor.resize(no);
  for (int a = 0; a < no; ++a) l.identity_mor[a] = l.delta(a, a, 0);
  return l;
}

LinkingSystem centric_linking_of_group(const Group& g, int p) {
  auto f = std::make_shared<const FusionSystem>(fusion_of_group(g, p));
  Classification cls = classify(*f);
  std::vector<int> objects;
  for (int i = 0; i < f->sub_count(); ++i)
    if (cls.profile[i].centric) objects.push_back(i);
  return linking_of_group(g, p, f, sylow(g, p), std::move(objects));
}

// --- product model ---------------------------------------------------------------

LinkingSystem product_linking(std::shared_ptr<const LinkingSystem> a,
                              std::shared_ptr<const LinkingSystem> b) {
  if (a->kind != 0 || b->kind != 0)
    throw std::invalid_argument("nested products are not supported");
  LinkingSystem l;
  l.kind = 1;
  l.left = a;
  l.right = b;
  l.p = a->p;
  auto prod =
      std::make_shared<const FusionSystem>(product_fusion(*a->fsys, *b->fsys));
  l.fsys = prod;
  const int mb = b->fsys->S->size();

  // objects: every pair of factor objects, located in the product lattice
  struct ObjPair {
    int sub, fa, fb;
  };
  std::vector<ObjPair> pairs;
  for (int i = 0; i < a->object_count(); ++i)
    for (int j = 0; j < b->object_count(); ++j) {
      std::uint64_t mask = 0;
      for (int x : a->fsys->subs[a->objects[i]].members)
        for (int y : b->fsys->subs[b->objects[j]].members)
          mask |= std::uint64_t{1} << (x * mb + y);
      int sub = prod->sub_of_mask(mask);
      if (sub < 0) throw std::logic_error("product object not in the lattice");
      pairs.push_back(ObjPair{sub, i, j});
    }
  std::sort(pairs.begin(), pairs.end(),
            [](const ObjPair& x, const ObjPair& y) { return x.sub < y.sub; });
  l.object_index.assign(prod->sub_count(), -1);
  std::vector<std::vector<int>> obj_of_pair(
      a->object_count(), std::vector<int>(b->object_count()));
  for (const ObjPair& op : pairs) {
    l.object_index[op.sub] = static_cast<int>(l.objects.size());
    obj_of_pair[op.fa][op.fb] = static_cast<int>(l.objects.size());
    l.objects.push_back(op.sub);
    l.factor_obj.emplace_back(op.fa, op.fb);
  }

  // morphisms: id = left id * |Mor(right)| + right id
  const int mr = b->morphism_count();
  const int no = l.object_count();
  l.hom.assign(no, std::vector<std::vector<int>>(no));
  l.mors.resize(static_cast<std::size_t>(a->morphism_count()) * mr);
  l.pi.resize(l.mors.size());
  l.factor_mor.resize(l.mors.size());
  for (int ma = 0; ma < a->morphism_count(); ++ma)
    for (int mbm = 0; mbm < mr; ++mbm) {
      int id = ma * mr + mbm;
      int dom = obj_of_pair[a->mors[ma].dom][b->mors[mbm].dom];
      int cod = obj_of_pair[a->mors[ma].cod][b->mors[mbm].cod];
      l.mors[id] = LMor{dom, cod};
      l.factor_mor[id] = {ma, mbm};
      l.hom[dom][cod].push_back(id);
      const FMor& pa = a->pi[ma];
      const FMor& pb = b->pi[mbm];
      const std::vector<int>& dmem = prod->subs[l.objects[dom]].members;
      const std::vector<int>& amem = a->fsys->subs[pa.dom].members;
      const std::vector<int>& bmem = b->fsys->subs[pb.dom].members;
      std::vector<std::uint8_t> images(dmem.size());
      for (std::size_t k = 0; k < dmem.size(); ++k) {
        int x = dmem[k] / mb, y = dmem[k] % mb;
        int ix = pa.images[detail::member_pos(amem, x)];
        int iy = pb.images[detail::member_pos(bmem, y)];
        images[k] = static_cast<std::uint8_t>(ix * mb + iy);
      }
      l.pi[id] = morphism_from_images(*prod, l.objects[dom], std::move(images));
    }
  for (auto& row : l.hom)
    for (auto& cell : row) std::sort(cell.begin(), cell.end());

  for (int pa = 0; pa < no; ++pa)
    for (int pb = 0; pb < no; ++pb) {
      auto [a1, a2] = l.factor_obj[pa];
      auto [b1, b2] = l.factor_obj[pb];
      for (int x = 0; x < prod->S->size(); ++x) {
        int d1 = a->delta(a1, b1, x / mb);
        if (d1 < 0) continue;
        int d2 = b->delta(a2, b2, x % mb);
        if (d2 < 0) continue;
        l.delta_id.emplace(delta_key(l, pa, pb, x), d1 * mr + d2);
      }
    }
  l.identity_mor.resize(no);
  for (int i = 0; i < no; ++i) l.identity_mor[i] = l.delta(i, i, 0);
  return l;
}

// --- composition adjacency --------------------------------------------------------

namespace detail {

namespace {

CompAdjacency dense_adjacency(const LinkingSystem& l) {
  CompAdjacency adj;
  adj.n = l.morphism_count();
  adj.table.assign(static_cast<std::size_t>(adj.n) * adj.n, -1);
  adj.by_inner.resize(adj.n);
  adj.by_outer.resize(adj.n);
  for (int a = 0; a < l.object_count(); ++a)
    for (int b = 0; b < l.object_count(); ++b)
      for (int inner : l.hom[a][b])
        for (int c = 0; c < l.object_count(); ++c)
          for (int outer : l.hom[b][c]) {
            int r = l.compose(outer, inner);
            if (r < 0) throw std::logic_error("composition escaped the homsets");
            adj.table[static_cast<std::size_t>(outer) * adj.n + inner] = r;
            adj.by_inner[inner].emplace_back(outer, r);
            adj.by_outer[outer].emplace_back(inner, r);
          }
  return adj;
}

}  // namespace

CompAdjacency comp_adjacency(const LinkingSystem& l) {
  if (l.kind != 0)
    throw std::logic_error("adjacency is materialized for factors only");
  return dense_adjacency(l);
}

ComposeContext compose_context(const LinkingSystem& l) {
  ComposeContext ctx;
  ctx.l = &l;
  if (l.kind == 0) {
    ctx.self = dense_adjacency(l);
  } else {
    ctx.left = dense_adjacency(*l.left);
    ctx.right = dense_adjacency(*l.right);
    ctx.mr = l.right->morphism_count();
  }
  return ctx;
}

std::vector<int> fmor_elem_map(const FusionSystem& f, const FMor& alpha) {
  std::vector<int> map(f.S->size(), -1);
  const std::vector<int>& mem = f.subs[alpha.dom].members;
  for (std::size_t k = 0; k < mem.size(); ++k) map[mem[k]] = alpha.images[k];
  return map;
}

}  // namespace detail

}  // namespace ff
