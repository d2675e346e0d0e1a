#include "qpert/diagram.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qpert {

std::vector<DeltaConstraint> Diagram::vertex_deltas() const {
  std::vector<DeltaConstraint> out;
  for (size_t v = 0; v < vertices.size(); ++v) {
    std::vector<DeltaConstraint::Term> terms;
    for (int s = 0; s < 3; ++s) {
      const auto& ref = slots[v][s];
      const int sign = vertices[v].slots[s].sign();
      const std::string& sym =
          ref.is_internal ? internals[ref.index].symbol : externals[ref.index].symbol;
      terms.push_back({sign, sym});
    }
    out.emplace_back(terms, 3);
  }
  return out;
}

std::vector<std::string> Diagram::internal_symbols() const {
  std::vector<std::string> out;
  for (const auto& l : internals) out.push_back(l.symbol);
  return out;
}

void Diagram::validate() const {
  if (slots.size() != vertices.size())
    throw std::runtime_error("smatrix: diagram slot table size mismatch");
  for (size_t v = 0; v < vertices.size(); ++v)
    for (int s = 0; s < 3; ++s) {
      const auto& ref = slots[v][s];
      const auto& slot = vertices[v].slots[s];
      if (ref.is_internal) {
        const auto& line = internals.at(ref.index);
        if (line.species != slot.species)
          throw std::runtime_error("smatrix: internal line species mismatch at vertex slot");
        const bool creating = slot.variance == Variance::contravariant;
        if (creating && line.from_vertex != static_cast<int>(v))
          throw std::runtime_error("smatrix: internal line must be created at earlier vertex");
        if (!creating && line.to_vertex != static_cast<int>(v))
          throw std::runtime_error("smatrix: internal line must be absorbed at later vertex");
      } else {
        const auto& leg = externals.at(ref.index);
        if (leg.species != slot.species)
          throw std::runtime_error("smatrix: external leg species mismatch at vertex slot");
        const bool absorbed = slot.variance == Variance::covariant;
        if (absorbed != leg.incoming)
          throw std::runtime_error("smatrix: external leg direction mismatch at vertex slot");
      }
    }
}

const ExternalLeg& Diagram::leg(const std::string& symbol) const {
  for (const auto& l : externals)
    if (l.symbol == symbol) return l;
  throw std::runtime_error("smatrix: unknown external symbol '" + symbol + "'");
}

namespace {

// Canonical key of an order-2 wiring, for dedup: equivalent slots (same
// species and variance within a vertex) are interchangeable.
std::string wiring_key(const Diagram& d) {
  std::string key;
  for (size_t v = 0; v < d.vertices.size(); ++v) {
    std::vector<std::string> entries;
    for (int s = 0; s < 3; ++s) {
      const auto& slot = d.vertices[v].slots[s];
      const auto& ref = d.slots[v][s];
      std::string what = ref.is_internal ? ("int:" + d.internals[ref.index].species)
                                         : ("ext:" + d.externals[ref.index].symbol);
      entries.push_back(slot.species + (slot.variance == Variance::covariant ? "-" : "+") + "=" +
                        what);
    }
    std::sort(entries.begin(), entries.end());
    key += "[";
    for (const auto& e : entries) key += e + ";";
    key += "]";
  }
  return key;
}

// Family key ignores the time order (which vertex is earlier).
std::string family_key(const Diagram& d) {
  std::vector<std::string> groups;
  for (size_t v = 0; v < d.vertices.size(); ++v) {
    std::vector<std::string> syms;
    for (int s = 0; s < 3; ++s)
      if (!d.slots[v][s].is_internal) syms.push_back(d.externals[d.slots[v][s].index].symbol);
    std::sort(syms.begin(), syms.end());
    std::string g;
    for (const auto& x : syms) g += x + ",";
    groups.push_back(g);
  }
  std::sort(groups.begin(), groups.end());
  std::string key;
  for (const auto& g : groups) key += "{" + g + "}";
  for (const auto& line : d.internals) key += "<" + line.species + ">";
  return key;
}

}  // namespace

std::vector<Diagram> enumerate_diagrams(const std::vector<ExternalLeg>& legs, int order,
                                        const CouplingSpec& coupling) {
  for (const auto& l : legs) coupling.species(l.species);  // validates ids
  const auto types = enumerate_vertex_types(coupling.model());
  std::vector<Diagram> out;
  std::set<std::string> seen;

  if (order == 1) {
    if (legs.size() != 3) return {};
    int perm_idx[3] = {0, 1, 2};
    std::sort(perm_idx, perm_idx + 3);
    for (const auto& type : types) {
      int idx[3] = {0, 1, 2};
      do {
        bool ok = true;
        for (int s = 0; s < 3 && ok; ++s) {
          const auto& leg = legs[idx[s]];
          const auto& slot = type.slots[s];
          ok = leg.species == slot.species &&
               (leg.incoming == (slot.variance == Variance::covariant));
        }
        if (!ok) continue;
        Diagram d;
        d.model = coupling.model();
        d.vertices = {type};
        d.slots.resize(1);
        d.externals = legs;
        for (int s = 0; s < 3; ++s) d.slots[0][s] = {false, idx[s]};
        d.time_order = TimeOrder::single;
        d.family = "1";
        const std::string key = wiring_key(d);
        if (seen.insert(key).second) out.push_back(std::move(d));
      } while (std::next_permutation(idx, idx + 3));
    }
    return out;
  }

  if (order != 2) throw std::runtime_error("smatrix: only orders 1 and 2 are evaluated");
  if (legs.size() != 4) return {};

  for (const auto& early : types)
    for (const auto& late : types) {
      // Choose a slot (vertex, position) for each leg; the two remaining
      // slots must form the internal line (created early, absorbed late).
      int slot_of_leg[4];
      std::array<int, 6> taken{};
      std::function<void(int)> place = [&](int leg_i) {
        if (leg_i == 4) {
          int free_early = -1, free_late = -1;
          for (int s = 0; s < 3; ++s) {
            if (!taken[s]) free_early = s;
            if (!taken[3 + s]) free_late = s;
          }
          if (free_early < 0 || free_late < 0) return;  // both free slots in one vertex
          const auto& ce = early.slots[free_early];
          const auto& ca = late.slots[free_late];
          if (ce.variance != Variance::contravariant || ca.variance != Variance::covariant)
            return;
          if (ce.species != ca.species) return;

          Diagram d;
          d.model = coupling.model();
          d.vertices = {early, late};
          d.slots.resize(2);
          d.externals = legs;
          d.internals = {{ce.species, "int_k", 0, 1}};
          for (int li = 0; li < 4; ++li) {
            const int s = slot_of_leg[li];
            d.slots[s / 3][s % 3] = {false, li};
          }
          d.slots[0][free_early] = {true, 0};
          d.slots[1][free_late] = {true, 0};
          const std::string key = wiring_key(d);
          if (seen.insert(key).second) out.push_back(std::move(d));
          return;
        }
        for (int s = 0; s < 6; ++s) {
          if (taken[s]) continue;
          const auto& slot = (s < 3 ? early : late).slots[s % 3];
          const auto& leg = legs[leg_i];
          if (leg.species != slot.species) continue;
          if (leg.incoming != (slot.variance == Variance::covariant)) continue;
          taken[s] = 1;
          slot_of_leg[leg_i] = s;
          place(leg_i + 1);
          taken[s] = 0;
        }
      };
      place(0);
    }

  // Family labels: diagrams whose incoming pair shares a vertex come first
  // ("I"), then the mixed attachments in canonical key order.
  std::map<std::string, std::vector<size_t>> by_family;
  for (size_t i = 0; i < out.size(); ++i) by_family[family_key(out[i])].push_back(i);

  std::vector<std::string> ordered_keys;
  for (const auto& [key, idxs] : by_family) ordered_keys.push_back(key);
  std::stable_sort(ordered_keys.begin(), ordered_keys.end(),
                   [&](const std::string& a, const std::string& b) {
                     auto in_pair_shares_vertex = [&](const std::string& key) {
                       const auto& d = out[by_family.at(key).front()];
                       for (size_t v = 0; v < d.vertices.size(); ++v) {
                         int n_in = 0;
                         for (int s = 0; s < 3; ++s)
                           if (!d.slots[v][s].is_internal &&
                               d.externals[d.slots[v][s].index].incoming)
                             ++n_in;
                         if (n_in == 2) return true;
                       }
                       return false;
                     };
                     const bool ia = in_pair_shares_vertex(a), ib = in_pair_shares_vertex(b);
                     if (ia != ib) return ia;
                     return a < b;
                   });

  static const char* kRoman[] = {"I", "II", "III", "IV", "V", "VI"};
  std::vector<Diagram> labeled;
  int fam_i = 0;
  for (const auto& key : ordered_keys) {
    const std::string fam = fam_i < 6 ? kRoman[fam_i] : std::to_string(fam_i + 1);
    ++fam_i;
    for (size_t i : by_family[key]) {
      Diagram d = out[i];
      d.family = fam;
      // Primed: the vertex carrying the first incoming leg is the earlier one.
      int first_in = -1;
      for (size_t li = 0; li < legs.size(); ++li)
        if (legs[li].incoming) {
          first_in = static_cast<int>(li);
          break;
        }
      bool first_in_early = false;
      for (int s = 0; s < 3; ++s)
        if (!d.slots[0][s].is_internal && d.slots[0][s].index == first_in) first_in_early = true;
      d.time_order = first_in_early ? TimeOrder::primed : TimeOrder::double_primed;
      d.name = fam + (d.time_order == TimeOrder::primed ? "'" : "''");
      labeled.push_back(std::move(d));
    }
  }
  std::stable_sort(labeled.begin(), labeled.end(), [](const Diagram& a, const Diagram& b) {
    if (a.family != b.family) return a.family < b.family;
    return a.time_order < b.time_order;
  });
  for (auto& d : labeled) d.validate();
  return labeled;
}

namespace {

ExternalLeg make_leg(const std::string& species, bool incoming, const std::string& symbol,
                     double mass, const Vec3& p3) {
  ExternalLeg l;
  l.species = species;
  l.incoming = incoming;
  l.symbol = symbol;
  l.momentum = FourMomentum::on_shell_of(mass, p3);
  return l;
}

VertexTerm scalar_vertex(Variance v0, Variance v1, Variance v2) {
  VertexTerm t;
  t.slots[0] = {"massive", v0};
  t.slots[1] = {"massive", v1};
  t.slots[2] = {"massless", v2};
  return t;
}

}  // namespace

std::vector<Diagram> scalar_loop_figures(const CouplingSpec& coupling) {
  if (coupling.model() != Model::scalar2)
    throw std::runtime_error("smatrix: loop figures are defined for the scalar model");
  const double m = coupling.species("massive").mass;
  constexpr auto A = Variance::covariant;     // absorb
  constexpr auto C = Variance::contravariant; // create
  std::vector<Diagram> out;

  {  // 1. Self-energy of the massive particle: p -> (q massive, k massless) -> p'.
    Diagram d;
    d.model = Model::scalar2;
    d.name = "self_energy_massive";
    d.family = "loop-1";
    d.externals = {make_leg("massive", true, "p", m, {0, 0, 0}),
                   make_leg("massive", false, "p'", m, {0, 0, 0})};
    d.internals = {{"massive", "q", 0, 1}, {"massless", "k", 0, 1}};
    d.vertices = {scalar_vertex(A, C, C), scalar_vertex(A, C, A)};
    d.slots = {{Diagram::SlotRef{false, 0}, {true, 0}, {true, 1}},
               {Diagram::SlotRef{true, 0}, {false, 1}, {true, 1}}};
    out.push_back(d);
  }
  {  // 2. Self-energy of the massless particle: k -> (two massive) -> k'.
    Diagram d;
    d.model = Model::scalar2;
    d.name = "self_energy_massless";
    d.family = "loop-2";
    d.externals = {make_leg("massless", true, "k", 0.0, {0, 0, 0.5}),
                   make_leg("massless", false, "k'", 0.0, {0, 0, 0.5})};
    d.internals = {{"massive", "q1", 0, 1}, {"massive", "q2", 0, 1}};
    d.vertices = {scalar_vertex(C, C, A), scalar_vertex(A, A, C)};
    d.slots = {{Diagram::SlotRef{true, 0}, {true, 1}, {false, 0}},
               {Diagram::SlotRef{true, 0}, {true, 1}, {false, 1}}};
    out.push_back(d);
  }
  {  // 3. Emission-vertex correction (triangle).
    Diagram d;
    d.model = Model::scalar2;
    d.name = "vertex_correction";
    d.family = "loop-3";
    d.externals = {make_leg("massive", true, "p", m, {0, 0, 0}),
                   make_leg("massive", false, "p'", m, {0, 0, 0.3}),
                   make_leg("massless", false, "k_out", 0.0, {0, 0, -0.3})};
    d.internals = {{"massless", "k", 0, 1}, {"massive", "a", 0, 2}, {"massive", "b", 2, 1}};
    d.vertices = {scalar_vertex(A, C, C), scalar_vertex(A, C, A), scalar_vertex(A, C, C)};
    d.slots = {{Diagram::SlotRef{false, 0}, {true, 1}, {true, 0}},
               {Diagram::SlotRef{true, 2}, {false, 1}, {true, 0}},
               {Diagram::SlotRef{true, 1}, {true, 2}, {false, 2}}};
    out.push_back(d);
  }
  {  // 4. Two-loop ladder (overlapping self-energy insertion).
    Diagram d;
    d.model = Model::scalar2;
    d.name = "ladder_two_loop";
    d.family = "loop-4";
    d.externals = {make_leg("massive", true, "p", m, {0, 0, 0}),
                   make_leg("massive", false, "p'", m, {0, 0, 0})};
    d.internals = {{"massless", "k1", 0, 2},  // first rung
                   {"massless", "k2", 1, 3},  // second rung (overlapping)
                   {"massive", "q1", 0, 1},   // side segments
                   {"massive", "q2", 1, 2},
                   {"massive", "q3", 2, 3}};
    d.vertices = {scalar_vertex(A, C, C), scalar_vertex(A, C, C), scalar_vertex(A, C, A),
                  scalar_vertex(A, C, A)};
    d.slots = {{Diagram::SlotRef{false, 0}, {true, 2}, {true, 0}},
               {Diagram::SlotRef{true, 2}, {true, 3}, {true, 1}},
               {Diagram::SlotRef{true, 3}, {true, 4}, {true, 0}},
               {Diagram::SlotRef{true, 4}, {false, 1}, {true, 1}}};
    out.push_back(d);
  }
  for (const auto& d : out) d.validate();
  return out;
}

}  // namespace qpert
