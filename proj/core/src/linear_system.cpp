// Copyright 2026 The Troplin Authors
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

#include "troplin/linear_system.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

namespace troplin {

LinSysContext make_context(std::shared_ptr<const MetricGraphModel> curve,
                           Divisor d) {
  return make_context(curve, std::move(d), trivial_group(curve));
}

LinSysContext make_context(std::shared_ptr<const MetricGraphModel> curve,
                           Divisor d, GroupAction k) {
  LinSysContext ctx;
  ctx.curve = std::move(curve);
  ctx.d = std::move(d);
  ctx.k = std::move(k);
  ctx.q = std::make_shared<const QuotientResult>(build_quotient(ctx.k));
  return ctx;
}

std::string function_key(const PLFunction& f) {
  std::string s;
  if (f.minus_inf) return "-inf";
  for (const VertexRec& v : f.ref.model.vertices) {
    const ExtVal& val = f.values.at(v.id);
    s += v.id;
    s += '=';
    s += val.cls > 0 ? "+inf" : (val.cls < 0 ? "-inf" : format_rat(val.v));
    s += ';';
  }
  for (const EdgeRec& e : f.ref.model.edges) {
    s += e.id;
    s += ':';
    s += std::to_string(f.slopes.at(e.id));
    s += ';';
  }
  return s;
}

PLFunction eval_combination(const GeneratorSet& gens,
                            const TropicalCombination& comb) {
  if (comb.terms.empty())
    throw Error("bad combination", "empty tropical combination");
  PLFunction acc = trop_scale(comb.terms[0].second,
                              gens.gens.at(comb.terms[0].first));
  for (std::size_t i = 1; i < comb.terms.size(); ++i)
    acc = trop_add(acc, trop_scale(comb.terms[i].second,
                                   gens.gens.at(comb.terms[i].first)));
  return acc;
}

bool in_R(const LinSysContext& ctx, const PLFunction& f) {
  if (f.minus_inf) return false;
  return (ctx.d + principal_divisor(f)).effective();
}

bool in_RK(const LinSysContext& ctx, const PLFunction& f) {
  return in_R(ctx, f) && invariant_function(ctx.k, f);
}

bool can_fire(const LinSysContext& ctx, const Subgraph& g, const Divisor& e) {
  if (!e.effective())
    throw Error("bad divisor", "firing requires an effective divisor");
  for (const auto& [v, n] : g.boundary_outgoing()) {
    PointRef bp = g.ref.to_base(PointRef::at_vertex(v));
    if (e.at(bp) < n) return false;
  }
  return true;
}

bool in_S(const LinSysContext& ctx, const PLFunction& f) {
  if (!in_R(ctx, f)) throw Error("not a member", "f is not in R(D)");
  Divisor e = ctx.d + principal_divisor(f);
  std::vector<PointRef> smooth;
  for (const PointRef& p : e.support())
    if (valence(*ctx.curve, p) == 2) smooth.push_back(p);
  return !is_cut_set(*ctx.curve, smooth);
}

namespace {

// A'_max: non-vertex support points of the pushed-forward configuration
// whose whole fiber carries chips.
std::vector<PointRef> a_max(const LinSysContext& ctx, const Divisor& e) {
  std::set<PointRef> supp;
  for (const auto& [p, c] : e.coeffs) supp.insert(p);
  Divisor ep = push_forward(*ctx.q, e);
  std::vector<PointRef> out;
  for (const PointRef& pp : ep.support()) {
    if (pp.is_vertex()) continue;  // a vertex of the quotient model
    bool inside = true;
    for (const PointRef& x : fiber_points(*ctx.q, pp))
      if (!supp.count(x)) inside = false;
    if (inside) out.push_back(pp);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool in_SK(const LinSysContext& ctx, const PLFunction& f) {
  if (!in_RK(ctx, f)) throw Error("not a member", "f is not in R(D)^K");
  Divisor e = ctx.d + principal_divisor(f);
  return !is_cut_set(*ctx.q->quotient, a_max(ctx, e));
}

bool is_extremal_invariant(const LinSysContext& ctx, const PLFunction& f) {
  if (!in_RK(ctx, f)) throw Error("not a member", "f is not in R(D)^K");
  Divisor e = ctx.d + principal_divisor(f);

  // K-stable refinement by the chip support and the invariant-model
  // vertices; candidates are unions of closed edge orbits.
  std::set<PointRef> pts;
  for (const PointRef& p : e.support())
    for (const Isometry& s : ctx.k.elements)
      pts.insert(apply(*ctx.curve, s, p));
  for (const auto& [v, bp] : ctx.q->inv.derived.vertex_base) pts.insert(bp);
  DerivedModel r = refine(DerivedModel::trivial(ctx.curve),
                          std::vector<PointRef>(pts.begin(), pts.end()));
  InducedAction ia = induce(ctx.k, r);
  OrbitData od = orbit_data(ia.elements, r.model);

  std::map<std::string, std::vector<std::string>> unit_map;
  for (const EdgeRec& ed : r.model.edges)
    unit_map[od.edge_orbit.at(ed.id)].push_back(ed.id);
  std::vector<std::vector<std::string>> units;
  for (auto& [rep, mem] : unit_map) units.push_back(mem);
  int n = static_cast<int>(units.size());
  if (n < 2) return true;
  if (n > 16)
    throw Error("internal", "extremality search space too large");

  unsigned full = (1u << n) - 1;
  std::vector<char> memo(1u << n, 0);  // 0 unknown, 1 cannot fire, 2 can
  auto fires = [&](unsigned mask) {
    if (memo[mask]) return memo[mask] == 2;
    Subgraph g;
    g.ref = r;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      for (const std::string& eid : units[i]) {
        g.edges.insert(eid);
        g.verts.insert(r.model.edge(eid).ends[0]);
        g.verts.insert(r.model.edge(eid).ends[1]);
      }
    }
    bool ok = can_fire(ctx, g, e);
    memo[mask] = ok ? 2 : 1;
    return ok;
  };

  for (unsigned a = 1; a < full; ++a) {
    if (!fires(a)) continue;
    unsigned comp = full & ~a;
    // Partners are comp | s for proper subsets s of a.
    for (unsigned s = (a - 1) & a;; s = (s - 1) & a) {
      if (fires(comp | s)) return false;
      if (s == 0) break;
    }
  }
  return true;
}

namespace {

// Exact Gaussian elimination; the unique solution or nullopt when the
// system is inconsistent or underdetermined.
std::optional<std::vector<Rat>> solve_unique(
    std::vector<std::vector<Rat>> rows, int ncols) {
  int rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < ncols && rank < static_cast<int>(rows.size());
       ++col) {
    int p = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][col] != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[rank], rows[p]);
    Rat piv = rows[rank][col];
    for (int c = col; c <= ncols; ++c) rows[rank][c] /= piv;
    for (int r2 = 0; r2 < static_cast<int>(rows.size()); ++r2) {
      if (r2 == rank || rows[r2][col] == 0) continue;
      Rat fac = rows[r2][col];
      for (int c = col; c <= ncols; ++c) rows[r2][c] -= fac * rows[rank][c];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (int r2 = rank; r2 < static_cast<int>(rows.size()); ++r2)
    if (rows[r2][ncols] != 0) return std::nullopt;
  if (rank < ncols) return std::nullopt;
  std::vector<Rat> x(ncols);
  for (int r2 = 0; r2 < rank; ++r2) x[pivot_col[r2]] = rows[r2][ncols];
  return x;
}

struct EnumEdge {
  std::string id;
  std::string o, h;          // origin / far end
  Rat len;                   // finite length
  std::vector<long long> chips;  // ordered positive interior chip counts
  std::vector<long long> slopes;  // chips.size() + 1 entries once assigned
};

// Enumerates all ways to put `left` chips on the listed vertices and
// (as ordered positive groups) in the interiors of the finite edges.
void enum_vertex_chips(const std::vector<std::string>& vs, std::size_t i,
                       long long left, std::map<std::string, long long>* acc,
                       const std::function<void(long long)>& done) {
  if (i == vs.size()) {
    done(left);
    return;
  }
  for (long long c = 0; c <= left; ++c) {
    (*acc)[vs[i]] = c;
    enum_vertex_chips(vs, i + 1, left - c, acc, done);
  }
  acc->erase(vs[i]);
}

void enum_edge_chips(std::vector<EnumEdge>* edges, std::size_t i,
                     long long left, const std::function<void()>& done) {
  if (i == edges->size()) {
    if (left == 0) done();
    return;
  }
  // All ordered compositions of 0..left into positive parts on edge i.
  std::vector<long long>& parts = (*edges)[i].chips;
  std::function<void(long long)> rec = [&](long long rem) {
    enum_edge_chips(edges, i + 1, rem, done);
    for (long long c = 1; c <= rem; ++c) {
      parts.push_back(c);
      rec(rem - c);
      parts.pop_back();
    }
  };
  rec(left);
  parts.clear();
}

}  // namespace

namespace {

// Every rigid candidate of R(D): chips distributed over vertices and edge
// interiors, slopes assigned under the ord constraint, positions pinned by
// the exact closure equations.  Underdetermined configurations (freely
// movable chips) are skipped; their classes always fail the cut-set
// filters downstream.
void enumerate_candidates(const LinSysContext& ctx,
                          const std::function<void(const PLFunction&)>& sink) {
  long long deg = ctx.d.degree();
  if (!ctx.d.effective())
    throw Error("bad divisor", "enumeration requires an effective divisor");

  DerivedModel r0 = refine(canonical_loopless(DerivedModel::trivial(ctx.curve)),
                           ctx.d.support());
  const MetricGraphModel& m = r0.model;

  std::map<std::string, long long> dv;  // D at model vertices
  for (const VertexRec& v : m.vertices)
    dv[v.id] = ctx.d.at(r0.vertex_base.at(v.id));

  std::vector<std::string> vs;
  for (const VertexRec& v : m.vertices) vs.push_back(v.id);
  std::vector<EnumEdge> fes;
  std::vector<std::string> rays;  // ray edge ids
  for (const EdgeRec& e : m.edges) {
    if (e.length.infinite) {
      rays.push_back(e.id);
    } else {
      fes.push_back({e.id, m.origin(e), m.far_end(e), e.length.value, {}, {}});
    }
  }

  std::map<std::string, long long> vc;  // chips at vertices

  // Pinned vertex and unknown layout: finite vertex values then interior
  // chip positions edge by edge.
  std::vector<std::string> finite_vs;
  for (const VertexRec& v : m.vertices)
    if (!v.at_infinity) finite_vs.push_back(v.id);
  std::map<std::string, int> xidx;
  for (std::size_t i = 1; i < finite_vs.size(); ++i)
    xidx[finite_vs[i]] = static_cast<int>(i) - 1;

  auto try_type = [&](const std::map<std::string, long long>& ray_slope) {
    int nx = static_cast<int>(finite_vs.size()) - 1;
    std::vector<int> tbase(fes.size());
    int nt = 0;
    for (std::size_t i = 0; i < fes.size(); ++i) {
      tbase[i] = nx + nt;
      nt += static_cast<int>(fes[i].chips.size());
    }
    int ncols = nx + nt;
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0; i < fes.size(); ++i) {
      const EnumEdge& e = fes[i];
      std::vector<Rat> row(ncols + 1, Rat(0));
      auto add_vertex = [&](const std::string& v, int sign) {
        auto it = xidx.find(v);
        if (it != xidx.end()) row[it->second] += sign;
      };
      add_vertex(e.h, +1);
      add_vertex(e.o, -1);
      for (std::size_t j = 0; j < e.chips.size(); ++j)
        row[tbase[i] + static_cast<int>(j)] += e.chips[j];
      row[ncols] = Rat(e.slopes.back() * e.len);
      rows.push_back(std::move(row));
    }
    auto sol = solve_unique(std::move(rows), ncols);
    if (!sol) return;
    // Strictly increasing interior positions.
    for (std::size_t i = 0; i < fes.size(); ++i) {
      Rat prev(0);
      for (std::size_t j = 0; j < fes[i].chips.size(); ++j) {
        const Rat& t = (*sol)[tbase[i] + static_cast<int>(j)];
        if (!(t > prev)) return;
        prev = t;
      }
      if (!fes[i].chips.empty() && !(prev < fes[i].len)) return;
    }

    std::map<PointRef, Rat> val_at;
    std::vector<PointRef> cuts;
    auto xval = [&](const std::string& v) {
      auto it = xidx.find(v);
      return it == xidx.end() ? Rat(0) : (*sol)[it->second];
    };
    for (const std::string& v : finite_vs)
      val_at[r0.vertex_base.at(v)] = xval(v);
    for (std::size_t i = 0; i < fes.size(); ++i) {
      const EnumEdge& e = fes[i];
      Rat acc = xval(e.o);
      Rat prev(0);
      for (std::size_t j = 0; j < e.chips.size(); ++j) {
        const Rat& t = (*sol)[tbase[i] + static_cast<int>(j)];
        acc += e.slopes[j] * (t - prev);
        prev = t;
        PointRef bp = r0.base_point_on_edge(e.id, t);
        cuts.push_back(bp);
        val_at[bp] = acc;
      }
    }
    DerivedModel r1 = cuts.empty() ? r0 : refine(r0, cuts);
    std::map<std::string, ExtVal> vals;
    for (const VertexRec& v : r1.model.vertices) {
      if (v.at_infinity) continue;
      vals[v.id] = ExtVal(val_at.at(r1.vertex_base.at(v.id)));
    }
    std::map<std::string, long long> rs;
    for (const auto& [e, s] : ray_slope) rs[e] = s;
    sink(make_plfunction(r1, vals, rs));
  };

  auto with_chips = [&]() {
    // Ray slopes are forced by the chips at the tips.
    std::map<std::string, long long> ray_slope;
    for (const std::string& rid : rays) {
      const EdgeRec& e = m.edge(rid);
      const std::string& tip = m.far_end(e);
      long long s = dv.at(tip) - vc.at(tip);
      if (s > deg || s < -deg) return;
      ray_slope[rid] = s;
    }
    // Assign base slopes by depth-first search with the ord constraint
    // checked once every edge at a vertex is decided.
    std::map<std::string, long long> osum;      // running outgoing slope sum
    std::map<std::string, int> remaining;       // undecided incident edges
    for (const std::string& v : finite_vs) {
      osum[v] = 0;
      remaining[v] = 0;
    }
    for (const EnumEdge& e : fes) {
      ++remaining[e.o];
      ++remaining[e.h];
    }
    for (const std::string& rid : rays) {
      const std::string& anchor = m.origin(m.edge(rid));
      osum[anchor] += ray_slope.at(rid);
    }
    auto vertex_ok = [&](const std::string& v) {
      return osum.at(v) == vc.at(v) - dv.at(v);
    };
    std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
      if (i == fes.size()) {
        try_type(ray_slope);
        return true;
      }
      EnumEdge& e = fes[i];
      long long csum = 0;
      for (long long c : e.chips) csum += c;
      for (long long s0 = -deg; s0 + csum <= deg; ++s0) {
        e.slopes.clear();
        long long s = s0;
        e.slopes.push_back(s);
        for (long long c : e.chips) e.slopes.push_back(s += c);
        osum[e.o] += e.slopes.front();
        osum[e.h] -= e.slopes.back();
        --remaining[e.o];
        --remaining[e.h];
        bool ok = (remaining[e.o] > 0 || vertex_ok(e.o)) &&
                  (remaining[e.h] > 0 || vertex_ok(e.h));
        if (ok) dfs(i + 1);
        ++remaining[e.o];
        ++remaining[e.h];
        osum[e.o] -= e.slopes.front();
        osum[e.h] += e.slopes.back();
      }
      e.slopes.clear();
      return true;
    };
    // Vertices whose edges are all rays are checked up front.
    for (const std::string& v : finite_vs)
      if (remaining[v] == 0 && !vertex_ok(v)) return;
    dfs(0);
  };

  enum_vertex_chips(vs, 0, deg, &vc, [&](long long left) {
    enum_edge_chips(&fes, 0, left, with_chips);
  });
}

}  // namespace

GeneratorSet enumerate_S(const LinSysContext& ctx) {
  GeneratorSet out;
  if (ctx.d.degree() < 0) {
    out.empty_system = true;
    return out;
  }
  std::map<std::string, PLFunction> classes;
  enumerate_candidates(ctx, [&](const PLFunction& f) {
    if (!in_S(ctx, f)) return;
    PLFunction nf = normalize_mod_scaling(f);
    classes.emplace(function_key(nf), nf);
  });
  for (auto& [key, f] : classes) {
    out.gens.push_back(f);
    out.provenance.push_back("s");
  }
  return out;
}

namespace {

// f / n when every slope stays integral.
std::optional<PLFunction> divide_function(const PLFunction& f, long long n) {
  std::map<std::string, ExtVal> vals;
  for (const auto& [v, val] : f.values)
    if (val.finite()) vals[v] = ExtVal(Rat(val.v / n));
  std::map<std::string, long long> rays;
  for (const auto& [e, s] : f.slopes) {
    if (!f.ref.model.edge(e).length.infinite) continue;
    if (s % n != 0) return std::nullopt;
    rays[e] = s / n;
  }
  try {
    return make_plfunction(f.ref, vals, rays);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

GeneratorSet enumerate_SK(const LinSysContext& ctx) {
  GeneratorSet out;
  if (ctx.d.degree() < 0) {
    out.empty_system = true;
    return out;
  }
  // Candidates are rigid elements of R(phi_* D) on the quotient; the
  // in-S(D)_K filters run on the lifted function, not on the quotient
  // (its own cut-set test is stricter and would drop valid classes).
  Divisor dp = push_forward(*ctx.q, ctx.d);
  LinSysContext qctx = make_context(ctx.q->quotient, dp);
  long long n = ctx.k.order();
  std::size_t seen = 0;
  std::map<std::string, std::pair<PLFunction, std::string>> classes;
  enumerate_candidates(qctx, [&](const PLFunction& g) {
    std::size_t i = seen++;
    PLFunction h = pull_back(*ctx.q, g);
    auto f = divide_function(h, n);
    if (!f) return;
    if (!in_RK(ctx, *f)) return;
    if (!in_SK(ctx, *f)) return;
    PLFunction nf = normalize_mod_scaling(*f);
    classes.emplace(function_key(nf),
                    std::make_pair(nf, "q" + std::to_string(i)));
  });
  for (auto& [key, v] : classes) {
    out.gens.push_back(v.first);
    out.provenance.push_back(v.second);
  }
  return out;
}

namespace {

std::optional<Rat> constant_value(const PLFunction& f) {
  if (f.minus_inf) return std::nullopt;
  std::optional<Rat> c;
  for (const auto& [v, val] : f.values) {
    if (!val.finite()) {
      if (!f.ref.model.vertex(v).at_infinity) return std::nullopt;
      continue;
    }
    if (!c)
      c = val.v;
    else if (*c != val.v)
      return std::nullopt;
  }
  for (const auto& [e, s] : f.slopes)
    if (s != 0) return std::nullopt;
  return c;
}

// The source subgraph over a quotient subgraph.
Subgraph preimage_subgraph(const QuotientResult& q, const Subgraph& gp) {
  auto base = q.inv.derived.base;
  std::vector<PointRef> pts;
  for (const std::string& v : gp.verts)
    for (const PointRef& x :
         fiber_points(q, gp.ref.to_base(PointRef::at_vertex(v))))
      pts.push_back(x);
  std::vector<Interval> ivs;
  for (const std::string& eid : gp.edges) {
    for (const PathSeg& seg : gp.ref.edge_paths.at(eid)) {
      Rat lo = seg.from;
      ExtLen hi = seg.to;
      if (!hi.infinite && hi.value < lo) {
        lo = hi.value;
        hi = ExtLen(seg.from);
      }
      const EdgeRec& et = q.quotient->edge(seg.base_edge);
      for (const auto& [se, a] : q.phi.edge_map) {
        if (a.to != seg.base_edge) continue;
        Rat g_lo, g_hi;
        bool g_ray = hi.infinite;
        if (a.flip && et.length.infinite)
          throw Error("internal", "flipped morphism image on a ray");
        if (a.flip) {
          g_lo = (et.length.value - hi.value) / a.dilation;
          g_hi = (et.length.value - lo) / a.dilation;
        } else {
          g_lo = lo / a.dilation;
          if (!g_ray) g_hi = hi.value / a.dilation;
        }
        // Convert the g1-edge interval to base coordinates.
        const PathSeg& bs = q.inv.derived.edge_paths.at(se).front();
        if (bs.to.infinite) {
          if (g_ray)
            ivs.push_back({bs.base_edge, Rat(bs.from + g_lo), ExtLen::inf()});
          else
            ivs.push_back({bs.base_edge, Rat(bs.from + g_lo),
                           ExtLen(Rat(bs.from + g_hi))});
        } else if (bs.to.value >= bs.from) {
          ivs.push_back({bs.base_edge, Rat(bs.from + g_lo),
                         ExtLen(Rat(bs.from + g_hi))});
        } else {
          ivs.push_back({bs.base_edge, Rat(bs.from - g_hi),
                         ExtLen(Rat(bs.from - g_lo))});
        }
      }
    }
  }
  return make_subgraph(base, pts, ivs);
}

}  // namespace

TropicalCombination express(const LinSysContext& ctx, const GeneratorSet& gens,
                            const PLFunction& f) {
  if (!in_RK(ctx, f)) throw Error("not a member", "f is not in R(D)^K");
  std::map<std::size_t, Rat> best;

  std::function<void(const PLFunction&, int)> go = [&](const PLFunction& cur,
                                                       int depth) {
    if (depth > 200)
      throw Error("internal", "express recursion did not terminate");
    for (std::size_t j = 0; j < gens.gens.size(); ++j) {
      PLFunction diff = add_functions(cur, negate(gens.gens[j]), true);
      auto c = constant_value(diff);
      if (!c) continue;
      auto it = best.find(j);
      if (it == best.end() || it->second < *c) best[j] = *c;
      return;
    }

    Divisor e = ctx.d + principal_divisor(cur);
    std::vector<PointRef> amax = a_max(ctx, e);
    // Smallest qualifying cut set, lexicographic within each size.
    std::vector<PointRef> cut;
    std::vector<int> pick;
    std::function<bool(std::size_t, std::size_t)> choose =
        [&](std::size_t start, std::size_t need) -> bool {
      if (need == 0) {
        std::vector<PointRef> sel;
        for (int i : pick) sel.push_back(amax[i]);
        if (is_cut_set(*ctx.q->quotient, sel)) {
          cut = sel;
          return true;
        }
        return false;
      }
      for (std::size_t i = start; i + need <= amax.size(); ++i) {
        pick.push_back(static_cast<int>(i));
        if (choose(i + 1, need - 1)) return true;
        pick.pop_back();
      }
      return false;
    };
    for (std::size_t sz = 1; sz <= amax.size() && cut.empty(); ++sz)
      choose(0, sz);
    if (cut.empty())
      throw Error("internal",
                  "no qualifying cut set; generator set incomplete");

    // Split the quotient at the cut: one component's closure against the
    // closure of the rest.
    DerivedModel rq = refine(DerivedModel::trivial(ctx.q->quotient), cut);
    std::set<std::string> removed;
    for (const PointRef& p : cut)
      removed.insert(rq.locate(p).vertex);
    std::map<std::string, std::string> parent;
    std::function<std::string(std::string)> find = [&](std::string a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (const VertexRec& v : rq.model.vertices)
      if (!removed.count(v.id)) parent["v" + v.id] = "v" + v.id;
    for (const EdgeRec& ed : rq.model.edges) parent["e" + ed.id] = "e" + ed.id;
    for (const EdgeRec& ed : rq.model.edges)
      for (int sl = 0; sl < 2; ++sl)
        if (!removed.count(ed.ends[sl]))
          parent[find("e" + ed.id)] = find("v" + ed.ends[sl]);
    std::string root;
    for (const VertexRec& v : rq.model.vertices)
      if (!removed.count(v.id)) {
        root = find("v" + v.id);
        break;
      }
    Subgraph g1p, g2p;
    g1p.ref = rq;
    g2p.ref = rq;
    for (const EdgeRec& ed : rq.model.edges) {
      Subgraph& tgt = find("e" + ed.id) == root ? g1p : g2p;
      tgt.edges.insert(ed.id);
      tgt.verts.insert(ed.ends[0]);
      tgt.verts.insert(ed.ends[1]);
    }
    for (const VertexRec& v : rq.model.vertices)
      if (!removed.count(v.id))
        (find("v" + v.id) == root ? g1p : g2p).verts.insert(v.id);

    for (const Subgraph* gp : {&g1p, &g2p}) {
      Subgraph gi = preimage_subgraph(*ctx.q, *gp);
      ExtLen li = ExtLen::inf();
      for (const PointRef& x : gi.boundary_points())
        for (const auto& [v, bp] : ctx.q->inv.derived.vertex_base)
          li = min(li, distance(*ctx.curve, x, bp));
      if (li.infinite || li.value <= 0)
        throw Error("internal", "degenerate firing reach");
      PLFunction g = chip_firing(gi, li);
      go(add_functions(cur, g, true), depth + 1);
    }
  };

  go(f, 0);
  TropicalCombination comb;
  for (const auto& [j, c] : best) comb.terms.push_back({j, c});
  return comb;
}

GeneratorSet minimal_generators(const LinSysContext& ctx) {
  GeneratorSet all = enumerate_SK(ctx);
  GeneratorSet out;
  out.empty_system = all.empty_system;
  for (std::size_t i = 0; i < all.gens.size(); ++i) {
    if (!is_extremal_invariant(ctx, all.gens[i])) continue;
    out.gens.push_back(all.gens[i]);
    out.provenance.push_back(all.provenance[i]);
  }
  return out;
}

std::vector<Divisor> invariant_linear_system(const LinSysContext& ctx) {
  if (!ctx.d.effective() || !invariant_divisor(ctx.k, ctx.d))
    throw Error("bad divisor",
                "identification with |D|^K requires invariant D");
  std::vector<Divisor> out;
  for (const PLFunction& s : enumerate_SK(ctx).gens)
    out.push_back(ctx.d + principal_divisor(s));
  return out;
}

}  // namespace troplin
