#include "qpert/delta.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpert {

DeltaConstraint::DeltaConstraint(std::vector<Term> t, int dim) : terms(std::move(t)), dimension(dim) {
  if (terms.size() < 2) throw std::runtime_error("delta: constraint needs at least two terms");
  for (const auto& term : terms)
    if (term.sign != 1 && term.sign != -1)
      throw std::runtime_error("delta: signs must be +1 or -1");
}

bool DeltaConstraint::all_signs_equal() const {
  for (const auto& t : terms)
    if (t.sign != terms.front().sign) return false;
  return true;
}

std::string DeltaConstraint::str() const {
  std::string s = "delta(";
  for (size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].sign > 0)
      s += (i == 0 ? "" : "+");
    else
      s += "-";
    s += terms[i].symbol;
  }
  s += ")";
  return s;
}

bool operator==(const DeltaConstraint& a, const DeltaConstraint& b) {
  if (a.dimension != b.dimension || a.terms.size() != b.terms.size()) return false;
  auto canon = [](const DeltaConstraint& d) {
    std::vector<std::pair<std::string, int>> v;
    for (const auto& t : d.terms) v.emplace_back(t.symbol, t.sign);
    std::sort(v.begin(), v.end());
    if (!v.empty() && v.front().second < 0)
      for (auto& e : v) e.second = -e.second;
    return v;
  };
  return canon(a) == canon(b);
}

std::string LinearCombo::str(const std::string& lhs) const {
  std::string s = lhs + " = ";
  if (terms.empty()) return s + "0";
  bool first = true;
  for (const auto& [c, sym] : terms) {
    if (c >= 0.0 && !first) s += "+";
    if (c == 1.0)
      s += sym;
    else if (c == -1.0)
      s += "-" + sym;
    else
      s += std::to_string(c) + "*" + sym;
    first = false;
  }
  return s;
}

namespace {

using Row = std::map<std::string, double>;

void add_scaled(Row& dst, const Row& src, double f) {
  for (const auto& [sym, c] : src) {
    dst[sym] += f * c;
    if (std::abs(dst[sym]) < 1e-12) dst.erase(sym);
  }
}

}  // namespace

DeltaReduction reduce_deltas(const std::vector<DeltaConstraint>& constraints,
                             const std::vector<std::string>& internals) {
  std::vector<Row> rows;
  rows.reserve(constraints.size());
  for (const auto& c : constraints) {
    Row r;
    for (const auto& t : c.terms) {
      r[t.symbol] += t.sign;
      if (r[t.symbol] == 0.0) r.erase(t.symbol);
    }
    rows.push_back(std::move(r));
  }

  auto is_internal = [&](const std::string& s) {
    return std::find(internals.begin(), internals.end(), s) != internals.end();
  };

  DeltaReduction out;
  std::vector<bool> used(rows.size(), false);

  for (const auto& target : internals) {
    int pick = -1;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (used[i]) continue;
      auto it = rows[i].find(target);
      if (it != rows[i].end() && it->second != 0.0) {
        pick = static_cast<int>(i);
        break;
      }
    }
    if (pick < 0) continue;  // target absent from remaining rows: free or already solved

    const double piv = rows[pick][target];
    Row solved_row;  // target = -(rest)/piv
    for (const auto& [sym, c] : rows[pick])
      if (sym != target) solved_row[sym] = -c / piv;
    used[pick] = true;

    // Substitute into the remaining rows.
    for (size_t i = 0; i < rows.size(); ++i) {
      if (used[i]) continue;
      auto it = rows[i].find(target);
      if (it == rows[i].end()) continue;
      const double f = it->second;
      rows[i].erase(target);
      add_scaled(rows[i], solved_row, f);
    }
    // Back-substitute previously solved internals appearing in this solution.
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [sym, combo] : out.solved) {
        auto it = solved_row.find(sym);
        if (it == solved_row.end()) continue;
        const double f = it->second;
        solved_row.erase(sym);
        for (const auto& [c2, s2] : combo.terms) {
          solved_row[s2] += f * c2;
          if (std::abs(solved_row[s2]) < 1e-12) solved_row.erase(s2);
        }
        changed = true;
      }
    }

    LinearCombo combo;
    for (const auto& [sym, c] : solved_row) combo.terms.emplace_back(c, sym);
    out.solved[target] = std::move(combo);
  }

  // Substitute solved internals into previously solved combos as well.
  for (auto& [sym, combo] : out.solved) {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<std::pair<double, std::string>> next;
      for (const auto& [c, s] : combo.terms) {
        auto it = out.solved.find(s);
        if (it != out.solved.end() && s != sym) {
          for (const auto& [c2, s2] : it->second.terms) next.emplace_back(c * c2, s2);
          changed = true;
        } else {
          next.emplace_back(c, s);
        }
      }
      if (changed) {
        std::map<std::string, double> acc;
        for (const auto& [c, s] : next) acc[s] += c;
        combo.terms.clear();
        for (const auto& [s, c] : acc)
          if (std::abs(c) > 1e-12) combo.terms.emplace_back(c, s);
      }
    }
  }

  for (const auto& sym : internals)
    if (!out.solved.count(sym)) out.free_internals.push_back(sym);

  for (size_t i = 0; i < rows.size(); ++i) {
    if (used[i]) continue;
    if (rows[i].empty()) continue;  // identically satisfied
    std::vector<DeltaConstraint::Term> terms;
    for (const auto& [sym, c] : rows[i]) {
      const double rc = std::round(c);
      if (std::abs(c - rc) > 1e-9 || std::abs(rc) > 1.0) {
        if (!is_internal(sym))
          throw std::runtime_error("delta: kinematically forbidden (symbol " + sym +
                                   " forced against itself)");
        throw std::runtime_error("delta: kinematically forbidden (non-unimodular residual)");
      }
      terms.push_back({static_cast<int>(rc), sym});
    }
    if (terms.size() < 2) {
      // A single surviving symbol is forced to zero; record it as a solved
      // internal if it is one, otherwise the system pins an external.
      const auto& sym = terms.front().symbol;
      if (is_internal(sym)) {
        out.solved[sym] = LinearCombo{};
        out.free_internals.erase(
            std::remove(out.free_internals.begin(), out.free_internals.end(), sym),
            out.free_internals.end());
        continue;
      }
      throw std::runtime_error("delta: kinematically forbidden (external " + sym +
                               " forced to zero)");
    }
    out.residual.emplace_back(terms, constraints[i].dimension);
  }

  return out;
}

}  // namespace qpert
