#include "bordered/dga.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <sstream>

#include "bordered/errors.hpp"
#include "bordered/parallel.hpp"

namespace bordered {

void add_into(Elem& a, const Elem& b) {
  if (b.empty()) return;
  Elem out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  a.swap(out);
}

Elem reduce_mod2(std::vector<std::size_t> terms) {
  std::sort(terms.begin(), terms.end());
  Elem out;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) ++j;
    if ((j - i) & 1U) out.push_back(terms[i]);
    i = j;
  }
  return out;
}

namespace {
const Elem kZero;
std::uint64_t key2(std::size_t a, std::size_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}
}  // namespace

DGAlgebra::DGAlgebra(DGAlgebraData data)
    : name_(std::move(data.name)), names_(std::move(data.names)), idempotents_(std::move(data.idempotents)) {
  const std::size_t n = names_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(names_[i], i).second)
      throw Error(ErrorKind::DuplicateName, "algebra " + name_ + ": basis name '" + names_[i] + "' repeated");
  }
  for (auto& [alias, i] : data.aliases) {
    if (i >= n) throw Error(ErrorKind::UnknownSymbol, "alias target out of range");
    index_.emplace(alias, i);
  }
  auto check = [&](std::size_t i) {
    if (i >= n) throw Error(ErrorKind::UnknownSymbol, "algebra " + name_ + ": basis index out of range");
  };
  is_idem_.assign(n, false);
  for (auto i : idempotents_) {
    check(i);
    is_idem_[i] = true;
  }
  diff_.assign(n, {});
  for (auto& [a, e] : data.diff) {
    check(a);
    for (auto x : e) check(x);
    add_into(diff_[a], reduce_mod2(e));
  }
  for (auto& [a, b, e] : data.mult) {
    check(a);
    check(b);
    for (auto x : e) check(x);
    Elem& slot = mult_[key2(a, b)];
    add_into(slot, reduce_mod2(e));
    if (slot.empty()) mult_.erase(key2(a, b));
  }

  source_ = std::move(data.source_idem);
  target_ = std::move(data.target_idem);
  if (source_.empty()) {
    source_.assign(n, npos);
    target_.assign(n, npos);
    for (std::size_t a = 0; a < n; ++a) {
      for (auto i : idempotents_) {
        if (mul(i, a) == Elem{a}) source_[a] = source_[a] == npos ? i : source_[a];
        if (mul(a, i) == Elem{a}) target_[a] = target_[a] == npos ? i : target_[a];
      }
    }
  }
  if (source_.size() != n || target_.size() != n)
    throw Error(ErrorKind::InvalidArgument, "algebra " + name_ + ": idempotent assignment has wrong length");

  mul_pre_.assign(n, {});
  diff_pre_.assign(n, {});
  std::vector<std::pair<std::uint64_t, const Elem*>> entries;
  for (auto& [k, e] : mult_) entries.emplace_back(k, &e);
  std::sort(entries.begin(), entries.end(), [](auto& x, auto& y) { return x.first < y.first; });
  for (auto& [k, e] : entries)
    for (auto c : *e) mul_pre_[c].emplace_back(static_cast<std::size_t>(k >> 32), static_cast<std::size_t>(k & 0xffffffffU));
  for (std::size_t a = 0; a < n; ++a)
    for (auto c : diff_[a]) diff_pre_[c].push_back(a);
  for (std::size_t a = 0; a < n; ++a) by_source_[source_[a]].push_back(a);
}

std::size_t DGAlgebra::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw Error(ErrorKind::UnknownSymbol, "'" + name + "' is not a basis element of algebra " + name_);
  return it->second;
}

std::optional<std::size_t> DGAlgebra::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Elem& DGAlgebra::mul(std::size_t a, std::size_t b) const {
  auto it = mult_.find(key2(a, b));
  return it == mult_.end() ? kZero : it->second;
}

Elem DGAlgebra::mul(const Elem& a, const Elem& b) const {
  Elem out;
  for (auto x : a)
    for (auto y : b) add_into(out, mul(x, y));
  return out;
}

Elem DGAlgebra::d(const Elem& a) const {
  Elem out;
  for (auto x : a) add_into(out, diff_.at(x));
  return out;
}

const std::vector<std::size_t>& DGAlgebra::starting_at(std::size_t idem) const {
  static const std::vector<std::size_t> none;
  auto it = by_source_.find(idem);
  return it == by_source_.end() ? none : it->second;
}

std::string DGAlgebra::render(const Elem& e) const {
  if (e.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += " + ";
    out += names_.at(e[i]);
  }
  return out;
}

bool DgaReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.passed; });
}

namespace {

// Runs `test` on tuples [0, count) in fixed chunks and keeps the witness from
// the lowest failing tuple.
template <class Test>
CheckOutcome run_checks(std::string name, std::size_t count, bool exhaustive, Test test) {
  CheckOutcome out;
  out.name = std::move(name);
  out.exhaustive = exhaustive;
  out.instances = count;
  std::size_t chunks = default_chunk_count(count);
  std::vector<std::optional<std::string>> first(chunks);
  parallel_chunks(
      count,
      [&](std::size_t c, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
          if (auto w = test(i)) {
            first[c] = std::move(w);
            return;
          }
        }
      },
      chunks);
  for (auto& f : first) {
    if (f) {
      out.passed = false;
      out.witness = *f;
      break;
    }
  }
  return out;
}

}  // namespace

DgaReport verify_dga(const DGAlgebra& A, std::size_t sample_budget, std::uint64_t seed) {
  DgaReport report;
  const std::size_t n = A.size();
  auto nm = [&](std::size_t i) { return A.basis_name(i); };

  report.checks.push_back(run_checks("d^2 = 0", n, true, [&](std::size_t a) -> std::optional<std::string> {
    Elem dd = A.d(A.d(a));
    if (dd.empty()) return std::nullopt;
    return "d(d(" + nm(a) + ")) = " + A.render(dd);
  }));

  auto leibniz = [&](std::size_t a, std::size_t b) -> std::optional<std::string> {
    Elem lhs = A.d(A.mul(a, b));
    Elem rhs = A.mul(A.d(a), Elem{b});
    add_into(rhs, A.mul(Elem{a}, A.d(b)));
    if (lhs == rhs) return std::nullopt;
    return "a=" + nm(a) + " b=" + nm(b) + ": d(ab) = " + A.render(lhs) + ", d(a)b + a d(b) = " + A.render(rhs);
  };
  auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
    Elem lhs = A.mul(A.mul(a, b), Elem{c});
    Elem rhs = A.mul(Elem{a}, A.mul(b, c));
    if (lhs == rhs) return std::nullopt;
    return "a=" + nm(a) + " b=" + nm(b) + " c=" + nm(c) + ": (ab)c = " + A.render(lhs) +
           ", a(bc) = " + A.render(rhs);
  };

  // Sampling draws composable tuples: target(a) = source(b). Non-composable
  // tuples multiply to zero on both sides once idempotents are respected,
  // which the idempotent check covers exhaustively.
  bool typed = true;
  for (std::size_t a = 0; a < n; ++a)
    if (A.source(a) == npos || A.target(a) == npos) typed = false;
  std::mt19937_64 rng(seed);
  std::unordered_map<std::size_t, std::vector<std::size_t>> ending_at;
  for (std::size_t a = 0; a < n; ++a) ending_at[A.target(a)].push_back(a);
  auto ends = [&](std::size_t idem) -> const std::vector<std::size_t>& {
    static const std::vector<std::size_t> none;
    auto it = ending_at.find(idem);
    return it == ending_at.end() ? none : it->second;
  };
  auto pick = [&](const std::vector<std::size_t>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };

  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  if (n2 <= static_cast<double>(sample_budget)) {
    report.checks.push_back(
        run_checks("Leibniz", n * n, true, [&](std::size_t i) { return leibniz(i / n, i % n); }));
  } else {
    std::vector<std::pair<std::size_t, std::size_t>> samples;
    if (typed) {
      // Uniform over composable pairs: weight the left factor by its successors.
      std::vector<double> w(n);
      for (std::size_t a = 0; a < n; ++a) w[a] = static_cast<double>(A.starting_at(A.target(a)).size());
      std::discrete_distribution<std::size_t> left(w.begin(), w.end());
      for (std::size_t s = 0; s < sample_budget; ++s) {
        std::size_t a = left(rng);
        samples.emplace_back(a, pick(A.starting_at(A.target(a))));
      }
    } else {
      std::uniform_int_distribution<std::size_t> u(0, n - 1);
      for (std::size_t s = 0; s < sample_budget; ++s) samples.emplace_back(u(rng), u(rng));
    }
    report.checks.push_back(run_checks("Leibniz", samples.size(), false, [&](std::size_t i) {
      return leibniz(samples[i].first, samples[i].second);
    }));
  }

  const double n3 = n2 * static_cast<double>(n);
  if (n3 <= static_cast<double>(sample_budget)) {
    report.checks.push_back(run_checks("associativity", n * n * n, true, [&](std::size_t i) {
      return assoc(i / (n * n), (i / n) % n, i % n);
    }));
  } else {
    std::vector<std::array<std::size_t, 3>> samples;
    if (typed) {
      std::vector<double> w(n);
      for (std::size_t b = 0; b < n; ++b)
        w[b] = static_cast<double>(ends(A.source(b)).size()) *
               static_cast<double>(A.starting_at(A.target(b)).size());
      std::discrete_distribution<std::size_t> middle(w.begin(), w.end());
      for (std::size_t s = 0; s < sample_budget; ++s) {
        std::size_t b = middle(rng);
        std::size_t a = pick(ends(A.source(b)));
        std::size_t c = pick(A.starting_at(A.target(b)));
        samples.push_back({a, b, c});
      }
    } else {
      std::uniform_int_distribution<std::size_t> u(0, n - 1);
      for (std::size_t s = 0; s < sample_budget; ++s) samples.push_back({u(rng), u(rng), u(rng)});
    }
    report.checks.push_back(run_checks("associativity", samples.size(), false, [&](std::size_t i) {
      return assoc(samples[i][0], samples[i][1], samples[i][2]);
    }));
  }

  const auto& idem = A.idempotents();
  report.checks.push_back(
      run_checks("idempotents", idem.size() * idem.size() + n, true, [&](std::size_t i) -> std::optional<std::string> {
        std::size_t m = idem.size() * idem.size();
        if (i < m) {
          std::size_t a = idem[i / idem.size()], b = idem[i % idem.size()];
          Elem expect = a == b ? Elem{a} : Elem{};
          if (A.mul(a, b) == expect) return std::nullopt;
          return nm(a) + " * " + nm(b) + " = " + A.render(A.mul(a, b));
        }
        std::size_t a = i - m;
        Elem left, right;
        for (auto e : idem) {
          add_into(left, A.mul(e, a));
          add_into(right, A.mul(a, e));
        }
        if (left != Elem{a}) return "(sum of idempotents) * " + nm(a) + " = " + A.render(left);
        if (right != Elem{a}) return nm(a) + " * (sum of idempotents) = " + A.render(right);
        return std::nullopt;
      }));

  report.checks.push_back(run_checks("products respect idempotents", n * n, true,
                                     [&](std::size_t i) -> std::optional<std::string> {
                                       std::size_t a = i / n, b = i % n;
                                       if (A.mul(a, b).empty() || A.target(a) == A.source(b)) return std::nullopt;
                                       return nm(a) + " * " + nm(b) + " is nonzero across idempotents";
                                     }));
  return report;
}

}  // namespace bordered
