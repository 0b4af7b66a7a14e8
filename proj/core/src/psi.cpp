#include "limset/psi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <utility>

#include "limset/arith.hpp"
#include "limset/errors.hpp"

namespace limset {

Rat PowerLaw::value(long long x) const {
  if (x < 1) throw DomainError("PowerLaw: argument must be positive");
  if (coeff == 0) return 0;
  return coeff / rat_pow(Rat(x), tau);
}

namespace {

long long sup_norm(const IntVec& q) {
  long long m = 0;
  for (long long e : q) m = std::max(m, e);
  return m;
}

void check_vector(const IntVec& q, int n) {
  if (static_cast<int>(q.size()) != n) throw DomainError("psi: vector length != n");
  bool nonzero = false;
  for (long long e : q) {
    if (e < 0) throw DomainError("psi: negative entry");
    if (e != 0) nonzero = true;
  }
  if (!nonzero) throw DomainError("psi: zero vector");
}

// enumerate q in Z_+^n with lo <= |q| <= hi
template <typename Visit>
void orthant_window(int n, long long lo, long long hi, Visit&& visit) {
  if (hi < lo || hi < 1) return;
  double count = std::pow(static_cast<double>(hi) + 1.0, n);
  if (count > 2e8)
    throw UnsupportedError("orthant window too large to enumerate (|q| <= " +
                           std::to_string(hi) + ", n = " + std::to_string(n) + ")");
  lo = std::max<long long>(lo, 1);
  IntVec q(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int pos, long long max_so_far) -> void {
    if (pos == n) {
      if (max_so_far >= lo) visit(q);
      return;
    }
    for (long long v = 0; v <= hi; ++v) {
      q[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, std::max(max_so_far, v));
    }
  };
  rec(rec, 0, 0);
}

}  // namespace

ApproxFunction ApproxFunction::finite_support(int n, std::map<IntVec, Rat> table) {
  if (n < 1) throw DomainError("finite_support: n must be >= 1");
  for (const auto& [q, v] : table) {
    check_vector(q, n);
    if (v < 0) throw DomainError("finite_support: negative value");
  }
  ApproxFunction f;
  f.kind_ = Kind::FiniteSupport;
  f.n_ = n;
  f.table_ = std::move(table);
  return f;
}

ApproxFunction ApproxFunction::univariate(int n, PowerLaw g) {
  if (n < 1) throw DomainError("univariate: n must be >= 1");
  if (g.coeff < 0) throw DomainError("univariate: negative coefficient");
  ApproxFunction f;
  f.kind_ = Kind::Univariate;
  f.n_ = n;
  f.rule_ = g;
  return f;
}

ApproxFunction ApproxFunction::ray(IntVec direction, PowerLaw g) {
  long long d = gcd_vec(direction);
  if (d != 1) throw DomainError("ray: direction must be primitive");
  if (g.coeff < 0) throw DomainError("ray: negative coefficient");
  ApproxFunction f;
  f.kind_ = Kind::Ray;
  f.n_ = static_cast<int>(direction.size());
  f.dir_ = std::move(direction);
  f.rule_ = g;
  return f;
}

ApproxFunction ApproxFunction::alternating_axes(PowerLaw g) {
  if (g.coeff < 0) throw DomainError("alternating_axes: negative coefficient");
  ApproxFunction f;
  f.kind_ = Kind::AlternatingAxes;
  f.n_ = 2;
  f.rule_ = g;
  return f;
}

ApproxFunction ApproxFunction::entrywise_mask(ApproxFunction base, IntVec residues,
                                              IntVec moduli, Rat scale) {
  if (residues.size() != moduli.size() ||
      static_cast<int>(residues.size()) != base.dim())
    throw DomainError("entrywise_mask: residue/modulus length must equal n");
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] < 1) throw DomainError("entrywise_mask: modulus must be positive");
    if (residues[i] < 0 || residues[i] >= moduli[i])
      throw DomainError("entrywise_mask: residue out of range");
  }
  if (scale <= 0) throw DomainError("entrywise_mask: scale must be positive");
  ApproxFunction f;
  f.kind_ = Kind::EntrywiseMask;
  f.n_ = base.dim();
  f.base_ = std::make_shared<ApproxFunction>(std::move(base));
  f.mask_residues_ = std::move(residues);
  f.mask_moduli_ = std::move(moduli);
  f.factor_ = std::move(scale);
  return f;
}

ApproxFunction ApproxFunction::gcd_class_mask(ApproxFunction base, long long modulus,
                                              long long residue) {
  if (modulus < 1) throw DomainError("gcd_class_mask: modulus must be positive");
  if (residue < 0 || residue >= modulus)
    throw DomainError("gcd_class_mask: residue out of range");
  ApproxFunction f;
  f.kind_ = Kind::GcdClassMask;
  f.n_ = base.dim();
  f.base_ = std::make_shared<ApproxFunction>(std::move(base));
  f.gcd_modulus_ = modulus;
  f.gcd_residue_ = residue;
  return f;
}

ApproxFunction ApproxFunction::chow_technau(int n, std::vector<Rat> alphas,
                                            std::vector<Rat> gammas, PowerLaw g) {
  if (n < 1) throw DomainError("chow_technau: n must be >= 1");
  if (alphas.empty() || alphas.size() != gammas.size())
    throw DomainError("chow_technau: need matching nonempty alpha/gamma lists");
  ApproxFunction f;
  f.kind_ = Kind::ChowTechnau;
  f.n_ = n;
  f.alphas_ = std::move(alphas);
  f.gammas_ = std::move(gammas);
  f.rule_ = g;
  return f;
}

ApproxFunction ApproxFunction::scaled(ApproxFunction base, Rat factor) {
  if (factor <= 0) throw DomainError("scaled: factor must be positive");
  ApproxFunction f;
  f.kind_ = Kind::Scaled;
  f.n_ = base.dim();
  f.base_ = std::make_shared<ApproxFunction>(std::move(base));
  f.factor_ = std::move(factor);
  return f;
}

std::string ApproxFunction::kind_name() const {
  switch (kind_) {
    case Kind::FiniteSupport: return "finite_support";
    case Kind::Univariate: return "univariate";
    case Kind::Ray: return "supported_on_ray";
    case Kind::AlternatingAxes: return "alternating_axes";
    case Kind::EntrywiseMask: return "entrywise_mask";
    case Kind::GcdClassMask: return "nrs_masked";
    case Kind::ChowTechnau: return "chow_technau";
    case Kind::Scaled: return "scaled";
  }
  return "?";
}

Rat resonance_product(const std::vector<Rat>& alphas, const std::vector<Rat>& gammas,
                      long long d) {
  Rat prod = 1;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    prod *= nearest_int_dist(Rat(d) * alphas[i] - gammas[i]);
  }
  return prod;
}

Rat ApproxFunction::value(const IntVec& q) const {
  check_vector(q, n_);
  switch (kind_) {
    case Kind::FiniteSupport: {
      auto it = table_.find(q);
      return it == table_.end() ? Rat(0) : it->second;
    }
    case Kind::Univariate:
      return rule_.value(sup_norm(q));
    case Kind::Ray: {
      // q = t * dir for an integer t >= 1, else zero
      std::optional<long long> t;
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (dir_[i] == 0) {
          if (q[i] != 0) return 0;
        } else {
          if (q[i] % dir_[i] != 0) return 0;
          long long ti = q[i] / dir_[i];
          if (!t) t = ti;
          else if (*t != ti) return 0;
        }
      }
      return (t && *t >= 1) ? rule_.value(*t) : Rat(0);
    }
    case Kind::AlternatingAxes: {
      if (q[1] == 0 && q[0] % 2 == 1) return rule_.value(q[0]);
      if (q[0] == 0 && q[1] % 2 == 0) return rule_.value(q[1]);
      return 0;
    }
    case Kind::EntrywiseMask: {
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] % mask_moduli_[i] != mask_residues_[i]) return 0;
      }
      return factor_ * base_->value(q);
    }
    case Kind::GcdClassMask: {
      if (gcd_vec(q) % gcd_modulus_ != gcd_residue_) return 0;
      return base_->value(q);
    }
    case Kind::ChowTechnau: {
      Rat vbar = rule_.value(sup_norm(q));
      Rat denom = resonance_product(alphas_, gammas_, gcd_vec(q));
      if (denom == 0)
        throw SingularityError("chow_technau: vanishing resonance norm at d=" +
                               std::to_string(gcd_vec(q)));
      return vbar / denom;
    }
    case Kind::Scaled:
      return factor_ * base_->value(q);
  }
  throw DomainError("psi: unknown kind");
}

Rat eval_psi(const ApproxFunction& f, const IntVec& q) { return f.value(q); }

bool ApproxFunction::dense_support() const {
  switch (kind_) {
    case Kind::Univariate:
    case Kind::ChowTechnau:
      return true;
    case Kind::EntrywiseMask:
    case Kind::GcdClassMask:
    case Kind::Scaled:
      return base_->dense_support();
    default:
      return false;
  }
}

void ApproxFunction::for_support(
    long long lo, long long hi,
    const std::function<void(const IntVec&, const Rat&)>& visit) const {
  lo = std::max<long long>(lo, 1);
  if (hi < lo) return;
  switch (kind_) {
    case Kind::FiniteSupport: {
      for (const auto& [q, v] : table_) {
        if (v == 0) continue;
        long long norm = sup_norm(q);
        if (norm >= lo && norm <= hi) visit(q, v);
      }
      return;
    }
    case Kind::Univariate:
    case Kind::ChowTechnau: {
      orthant_window(n_, lo, hi, [&](const IntVec& q) {
        Rat v = value(q);
        if (v > 0) visit(q, v);
      });
      return;
    }
    case Kind::Ray: {
      long long dn = sup_norm(dir_);
      long long t0 = (lo + dn - 1) / dn;
      long long t1 = hi / dn;
      IntVec q(dir_.size());
      for (long long t = std::max<long long>(t0, 1); t <= t1; ++t) {
        Rat v = rule_.value(t);
        if (v == 0) continue;
        for (std::size_t i = 0; i < dir_.size(); ++i) q[i] = t * dir_[i];
        visit(q, v);
      }
      return;
    }
    case Kind::AlternatingAxes: {
      for (long long d = lo; d <= hi; ++d) {
        Rat v = rule_.value(d);
        if (v == 0) continue;
        if (d % 2 == 1) visit(IntVec{d, 0}, v);
        else visit(IntVec{0, d}, v);
      }
      return;
    }
    case Kind::EntrywiseMask: {
      base_->for_support(lo, hi, [&](const IntVec& q, const Rat& v) {
        for (std::size_t i = 0; i < q.size(); ++i) {
          if (q[i] % mask_moduli_[i] != mask_residues_[i]) return;
        }
        visit(q, factor_ * v);
      });
      return;
    }
    case Kind::GcdClassMask: {
      base_->for_support(lo, hi, [&](const IntVec& q, const Rat& v) {
        if (gcd_vec(q) % gcd_modulus_ == gcd_residue_) visit(q, v);
      });
      return;
    }
    case Kind::Scaled: {
      base_->for_support(lo, hi, [&](const IntVec& q, const Rat& v) {
        visit(q, factor_ * v);
      });
      return;
    }
  }
}

std::optional<Rat> ApproxFunction::sup_bound() const {
  switch (kind_) {
    case Kind::FiniteSupport: {
      Rat best = 0;
      for (const auto& [q, v] : table_) best = rat_max(best, v);
      return best;
    }
    case Kind::Univariate:
    case Kind::Ray:
    case Kind::AlternatingAxes:
      return rule_.coeff;  // power laws peak at argument 1
    case Kind::EntrywiseMask:
    case Kind::Scaled: {
      auto b = base_->sup_bound();
      if (!b) return std::nullopt;
      return factor_ * *b;
    }
    case Kind::GcdClassMask:
      return base_->sup_bound();
    case Kind::ChowTechnau:
      return std::nullopt;  // resonance denominators are not bounded below
  }
  return std::nullopt;
}

bool ApproxFunction::operator==(const ApproxFunction& o) const {
  if (kind_ != o.kind_ || n_ != o.n_) return false;
  if (table_ != o.table_ || !(rule_ == o.rule_) || dir_ != o.dir_) return false;
  if (mask_residues_ != o.mask_residues_ || mask_moduli_ != o.mask_moduli_) return false;
  if (gcd_modulus_ != o.gcd_modulus_ || gcd_residue_ != o.gcd_residue_) return false;
  if (factor_ != o.factor_ || alphas_ != o.alphas_ || gammas_ != o.gammas_) return false;
  if (static_cast<bool>(base_) != static_cast<bool>(o.base_)) return false;
  if (base_ && !(*base_ == *o.base_)) return false;
  return true;
}

// --- transform --------------------------------------------------------------

std::string transform_status_name(TransformStatus s) {
  switch (s) {
    case TransformStatus::Exact: return "exact";
    case TransformStatus::TailBounded: return "tail_bounded";
    case TransformStatus::LowerBoundOnly: return "lower_bound_only";
    case TransformStatus::Infinite: return "infinite";
  }
  return "?";
}

const TransformEntry& TransformResult::at(long long d) const {
  auto it = values.find(d);
  if (it == values.end()) throw DomainError("TransformResult: no entry for d");
  return it->second;
}

double TransformResult::radius_approx(long long d) const {
  const TransformEntry& e = at(d);
  double x = to_double(e.sum_pow_m);
  return m == 1 ? x : std::pow(x, 1.0 / m);
}

namespace {

TransformResult transform_zero(int m, long long Q, long long d_max) {
  TransformResult out;
  out.Q = Q;
  out.m = m;
  for (long long d = 1; d <= d_max; ++d) out.values[d] = TransformEntry{};
  return out;
}

// exact path for kinds with enumerable support: group psi(q)^m by gcd class
TransformResult transform_enumerable(const ApproxFunction& f, int m, long long Q,
                                     long long d_max, long long norm_cap) {
  TransformResult out = transform_zero(m, Q, d_max);
  f.for_support(1, norm_cap, [&](const IntVec& q, const Rat& v) {
    long long d = gcd_vec(q);
    if (d > d_max) return;
    long long primitive_norm = sup_norm(q) / d;
    if (primitive_norm < Q) return;
    out.values[d].sum_pow_m += rat_pow(v, static_cast<unsigned>(m));
  });
  return out;
}

long long finite_support_norm_cap(const ApproxFunction& f) {
  long long cap = 0;
  for (const auto& [q, v] : f.table()) cap = std::max(cap, sup_norm(q));
  return cap;
}

// norm window that provably contains every support vector with gcd <= d_max,
// for kinds whose support is enumerable
long long enumerable_norm_cap(const ApproxFunction& f, long long d_max) {
  using K = ApproxFunction::Kind;
  switch (f.kind()) {
    case K::FiniteSupport:
      return finite_support_norm_cap(f);
    case K::Ray:
      // gcd(t * dir) = t, so classes d <= d_max live below d_max * |dir|
      return d_max * sup_norm(f.direction());
    case K::AlternatingAxes:
      return d_max;
    case K::EntrywiseMask:
    case K::GcdClassMask:
    case K::Scaled:
      return enumerable_norm_cap(f.base(), d_max);
    default:
      throw DomainError("enumerable_norm_cap: dense support");
  }
}

TransformResult transform_univariate(const ApproxFunction& f, int m, long long Q,
                                     long long d_max, const TransformOptions& opts) {
  const PowerLaw& g = f.rule();
  const int n = f.dim();
  TransformResult out = transform_zero(m, Q, d_max);
  if (g.coeff == 0) return out;

  if (n == 1) {
    // single primitive shell |q'| = 1, so Psi = psi and Q >= 2 empties the sum
    if (Q <= 1) {
      for (long long d = 1; d <= d_max; ++d)
        out.values[d].sum_pow_m = rat_pow(g.value(d), static_cast<unsigned>(m));
    }
    return out;
  }

  const long long M = static_cast<long long>(m) * g.tau;  // combined decay exponent
  const long long K = std::max(Q, opts.shell_cap);
  for (long long d = 1; d <= d_max; ++d) {
    TransformEntry& e = out.values[d];
    for (long long k = Q; k <= K; ++k) {
      e.sum_pow_m += Rat(primitive_count(n, k)) *
                     rat_pow(g.value(d * k), static_cast<unsigned>(m));
    }
    if (M > n) {
      // primitive_count(n,k) <= n 2^{n-1} k^{n-1}, so the tail is at most
      // c^m d^{-M} n 2^{n-1} K^{n-M} / (M - n)
      Rat tail = rat_pow(g.coeff, static_cast<unsigned>(m)) /
                 rat_pow(Rat(d), static_cast<unsigned>(M));
      tail *= Rat(n) * rat_pow(Rat(2), static_cast<unsigned>(n - 1));
      tail /= rat_pow(Rat(K), static_cast<unsigned>(M - n)) * Rat(M - n);
      e.status = TransformStatus::TailBounded;
      e.tail_bound = tail;
    } else if (M <= 1) {
      // at least one primitive vector per shell and sum k^{-M} diverges
      e.status = TransformStatus::Infinite;
    } else {
      e.status = TransformStatus::LowerBoundOnly;
    }
  }
  return out;
}

void scale_entries(TransformResult& r, const Rat& factor_pow_m) {
  for (auto& [d, e] : r.values) {
    e.sum_pow_m *= factor_pow_m;
    e.tail_bound *= factor_pow_m;
  }
}

}  // namespace

TransformResult psi_transform(const ApproxFunction& f, int m, long long Q, long long d_max,
                              const TransformOptions& opts) {
  if (m < 1) throw DomainError("psi_transform: m must be >= 1");
  if (Q < 1) throw DomainError("psi_transform: Q must be >= 1");
  if (d_max < 1) throw DomainError("psi_transform: d_max must be >= 1");

  switch (f.kind()) {
    case ApproxFunction::Kind::FiniteSupport:
      return transform_enumerable(f, m, Q, d_max, finite_support_norm_cap(f));

    case ApproxFunction::Kind::Ray: {
      TransformResult out = transform_zero(m, Q, d_max);
      if (sup_norm(f.direction()) >= Q) {
        for (long long d = 1; d <= d_max; ++d)
          out.values[d].sum_pow_m = rat_pow(f.rule().value(d), static_cast<unsigned>(m));
      }
      return out;
    }

    case ApproxFunction::Kind::AlternatingAxes: {
      TransformResult out = transform_zero(m, Q, d_max);
      if (Q <= 1) {
        for (long long d = 1; d <= d_max; ++d)
          out.values[d].sum_pow_m = rat_pow(f.rule().value(d), static_cast<unsigned>(m));
      }
      return out;
    }

    case ApproxFunction::Kind::Univariate:
      return transform_univariate(f, m, Q, d_max, opts);

    case ApproxFunction::Kind::GcdClassMask: {
      TransformResult out = psi_transform(f.base(), m, Q, d_max, opts);
      for (auto& [d, e] : out.values) {
        if (d % f.gcd_modulus() != f.gcd_residue()) e = TransformEntry{};
      }
      out.Q = Q;
      return out;
    }

    case ApproxFunction::Kind::Scaled: {
      TransformResult out = psi_transform(f.base(), m, Q, d_max, opts);
      scale_entries(out, rat_pow(f.factor(), static_cast<unsigned>(m)));
      return out;
    }

    case ApproxFunction::Kind::EntrywiseMask: {
      if (!f.dense_support()) {
        return transform_enumerable(f, m, Q, d_max, enumerable_norm_cap(f, d_max));
      }
      // dense base: enumerate primitive shells up to the cap; the mask only
      // removes terms, so an analytic tail bound of the base still applies
      TransformResult out = transform_zero(m, Q, d_max);
      const long long K = std::max(Q, opts.shell_cap);
      for (long long d = 1; d <= d_max; ++d) {
        TransformEntry& e = out.values[d];
        e.status = TransformStatus::LowerBoundOnly;
        orthant_window(f.dim(), Q, K, [&](const IntVec& qp) {
          long long g = 0;
          for (long long x : qp) g = std::gcd(g, x);
          if (g != 1) return;
          IntVec q(qp.size());
          for (std::size_t i = 0; i < q.size(); ++i) q[i] = d * qp[i];
          Rat v = f.value(q);
          if (v > 0) e.sum_pow_m += rat_pow(v, static_cast<unsigned>(m));
        });
      }
      TransformResult base_t = psi_transform(f.base(), m, Q, d_max, opts);
      for (auto& [d, e] : out.values) {
        const TransformEntry& be = base_t.values[d];
        if (be.status == TransformStatus::Exact) {
          e.status = TransformStatus::Exact;  // the window held everything
        } else if (be.status == TransformStatus::TailBounded) {
          e.status = TransformStatus::TailBounded;
          e.tail_bound = be.tail_bound * rat_pow(f.factor(), static_cast<unsigned>(m));
        }
      }
      return out;
    }

    case ApproxFunction::Kind::ChowTechnau: {
      TransformResult base_t =
          psi_transform(ApproxFunction::univariate(f.dim(), f.rule()), m, Q, d_max, opts);
      TransformResult out = transform_zero(m, Q, d_max);
      for (long long d = 1; d <= d_max; ++d) {
        const TransformEntry& be = base_t.values[d];
        TransformEntry& e = out.values[d];
        Rat denom = resonance_product(f.alphas(), f.gammas(), d);
        if (denom == 0) {
          // the whole gcd class resonates; every radius in it is unbounded
          e.status = TransformStatus::Infinite;
          continue;
        }
        Rat scale = 1 / rat_pow(denom, static_cast<unsigned>(m));
        e.sum_pow_m = be.sum_pow_m * scale;
        e.status = be.status;
        e.tail_bound = be.tail_bound * scale;
      }
      return out;
    }
  }
  throw DomainError("psi_transform: unknown kind");
}

// --- series -----------------------------------------------------------------

std::string series_kind_name(SeriesKind k) {
  switch (k) {
    case SeriesKind::KhintchineGroshev: return "khintchine_groshev";
    case SeriesKind::Orthant: return "orthant";
    case SeriesKind::DuffinSchaeffer: return "duffin_schaeffer";
    case SeriesKind::Catlin: return "catlin";
  }
  return "?";
}

std::string convergence_tag_name(ConvergenceTag t) {
  switch (t) {
    case ConvergenceTag::Convergent: return "convergent";
    case ConvergenceTag::Divergent: return "divergent";
    case ConvergenceTag::Unknown: return "unknown";
  }
  return "?";
}

namespace {

// analytic tag for power-law families: diverges iff m*tau <= n
ConvergenceTag power_law_tag(const PowerLaw& g, int n, int m) {
  if (g.coeff == 0) return ConvergenceTag::Convergent;
  return (static_cast<long long>(m) * g.tau <= n) ? ConvergenceTag::Divergent
                                                  : ConvergenceTag::Convergent;
}

ConvergenceTag series_tag(const ApproxFunction& f, int n, int m) {
  switch (f.kind()) {
    case ApproxFunction::Kind::FiniteSupport:
      return ConvergenceTag::Convergent;  // finitely many terms
    case ApproxFunction::Kind::Univariate:
      return power_law_tag(f.rule(), n, m);
    case ApproxFunction::Kind::Ray:
      // one vector per t: sum_t g(t)^m, diverges iff m*tau <= 1
      return power_law_tag(f.rule(), 1, m);
    case ApproxFunction::Kind::AlternatingAxes:
      return power_law_tag(f.rule(), 1, m);
    case ApproxFunction::Kind::Scaled:
      return series_tag(f.base(), n, m);
    case ApproxFunction::Kind::ChowTechnau: {
      // rational surrogate: resonance factors are periodic in d; a vanishing
      // class makes the family singular, otherwise the base exponent decides
      long long period = 1;
      for (const Rat& a : f.alphas())
        period = std::lcm(period, denominator(a).convert_to<long long>());
      for (long long d = 1; d <= period; ++d) {
        if (resonance_product(f.alphas(), f.gammas(), d) == 0)
          return ConvergenceTag::Divergent;
      }
      return power_law_tag(f.rule(), n, m);
    }
    default:
      return ConvergenceTag::Unknown;
  }
}

// univariate view q -> psi(q) for the Khintchine-Groshev sum
Rat kg_value(const ApproxFunction& f, long long q) {
  if (f.kind() == ApproxFunction::Kind::Univariate) return f.rule().value(q);
  if (f.kind() == ApproxFunction::Kind::Scaled)
    return f.factor() * kg_value(f.base(), q);
  if (f.dim() == 1) return f.value(IntVec{q});
  throw UnsupportedError("khintchine_groshev series needs a univariate rule");
}

}  // namespace

unsigned long long catlin_phi(const IntVec& q, int m) {
  long long g = gcd_vec(q);
  long long K = sup_norm(q);
  if (m == 1) {
    unsigned long long count = (g == 1) ? 1 : 0;  // p = 0
    for (long long p = 1; p <= K; ++p) {
      if (std::gcd(p, g) == 1) count += 2;  // +-p
    }
    return count;
  }
  // joint gcd over all entries of p and q; enumerate p in [-K,K]^m
  unsigned long long count = 0;
  IntVec p(static_cast<std::size_t>(m), -K);
  while (true) {
    long long pg = g;
    for (long long e : p) pg = std::gcd(pg, e < 0 ? -e : e);
    if (pg == 1) ++count;
    int pos = 0;
    while (pos < m && p[static_cast<std::size_t>(pos)] == K) {
      p[static_cast<std::size_t>(pos)] = -K;
      ++pos;
    }
    if (pos == m) break;
    ++p[static_cast<std::size_t>(pos)];
  }
  return count;
}

namespace {

// period of the admissibility pattern of t -> [psi(t q) > 0]
long long admissibility_period(const ApproxFunction& f) {
  switch (f.kind()) {
    case ApproxFunction::Kind::AlternatingAxes:
      return 2;
    case ApproxFunction::Kind::EntrywiseMask: {
      long long p = admissibility_period(f.base());
      for (long long b : f.mask_moduli()) p = std::lcm(p, b);
      return p;
    }
    case ApproxFunction::Kind::GcdClassMask:
      return std::lcm(admissibility_period(f.base()), f.gcd_modulus());
    case ApproxFunction::Kind::Scaled:
      return admissibility_period(f.base());
    default:
      return 1;
  }
}

const ApproxFunction& leaf(const ApproxFunction& f) {
  switch (f.kind()) {
    case ApproxFunction::Kind::EntrywiseMask:
    case ApproxFunction::Kind::GcdClassMask:
    case ApproxFunction::Kind::Scaled:
      return leaf(f.base());
    default:
      return f;
  }
}

}  // namespace

Rat catlin_sup_term(const ApproxFunction& f, const IntVec& q) {
  check_vector(q, f.dim());
  const Rat qn(sup_norm(q));
  const ApproxFunction& core = leaf(f);

  if (core.kind() == ApproxFunction::Kind::FiniteSupport) {
    // candidates are the support entries lying on the ray t*q
    Rat best = 0;
    for (const auto& [k, v] : core.table()) {
      std::optional<long long> t;
      bool on_ray = true;
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0) {
          if (k[i] != 0) { on_ray = false; break; }
        } else {
          if (k[i] % q[i] != 0) { on_ray = false; break; }
          long long ti = k[i] / q[i];
          if (!t) t = ti;
          else if (*t != ti) { on_ray = false; break; }
        }
      }
      if (!on_ray || !t || *t < 1) continue;
      best = rat_max(best, f.value(k) / (Rat(*t) * qn));
    }
    return best;
  }

  if (core.kind() == ApproxFunction::Kind::ChowTechnau)
    throw UnsupportedError("catlin_sup_term: no truncation certificate for chow_technau");

  // Power-law cores decay along the ray, so over admissible t the ratio is
  // nonincreasing and the first admissible multiple realizes the sup.
  long long period = admissibility_period(f);
  IntVec tq(q.size());
  for (long long t = 1; t <= period; ++t) {
    for (std::size_t i = 0; i < q.size(); ++i) tq[i] = t * q[i];
    Rat v = f.value(tq);
    if (v > 0) return v / (Rat(t) * qn);
  }
  return 0;
}

SeriesResult series_partial_sum(SeriesKind kind, const ApproxFunction& f, int n, int m,
                                long long limit) {
  if (limit < 0) throw DomainError("series: limit must be >= 0");
  if (m < 1 || n < 1) throw DomainError("series: need n, m >= 1");
  SeriesResult out;
  out.limit = limit;
  out.tag = series_tag(f, n, m);

  switch (kind) {
    case SeriesKind::KhintchineGroshev: {
      for (long long q = 1; q <= limit; ++q) {
        out.partial += rat_pow(Rat(q), static_cast<unsigned>(n - 1)) *
                       rat_pow(kg_value(f, q), static_cast<unsigned>(m));
      }
      return out;
    }
    case SeriesKind::Orthant: {
      if (f.kind() == ApproxFunction::Kind::Univariate) {
        for (long long k = 1; k <= limit; ++k) {
          out.partial += Rat(shell_count(f.dim(), k)) *
                         rat_pow(f.rule().value(k), static_cast<unsigned>(m));
        }
        return out;
      }
      f.for_support(1, limit, [&](const IntVec&, const Rat& v) {
        out.partial += rat_pow(v, static_cast<unsigned>(m));
      });
      return out;
    }
    case SeriesKind::DuffinSchaeffer: {
      if (f.kind() == ApproxFunction::Kind::Univariate) {
        // group by gcd class d and primitive shell k, |q| = dk <= limit
        for (long long d = 1; d <= limit; ++d) {
          Rat weight = rat_pow(Rat(totient(d), d), static_cast<unsigned>(m));
          for (long long k = 1; d * k <= limit; ++k) {
            out.partial += weight * Rat(primitive_count(f.dim(), k)) *
                           rat_pow(f.rule().value(d * k), static_cast<unsigned>(m));
          }
        }
        return out;
      }
      f.for_support(1, limit, [&](const IntVec& q, const Rat& v) {
        long long d = gcd_vec(q);
        out.partial +=
            rat_pow(Rat(totient(d), d) * v, static_cast<unsigned>(m));
      });
      return out;
    }
    case SeriesKind::Catlin: {
      // sums over every q in the window, not just the support: multiples of
      // q can carry mass even when psi(q) = 0
      orthant_window(f.dim(), 1, limit, [&](const IntVec& q) {
        Rat sup = catlin_sup_term(f, q);
        if (sup == 0) return;
        out.partial += Rat(catlin_phi(q, m)) * rat_pow(sup, static_cast<unsigned>(m));
      });
      return out;
    }
  }
  throw DomainError("series: unknown kind");
}

NrsReduction nrs_reduce(const IntVec& a_vec, const IntVec& b_vec, const IntVec& r,
                        const IntVec& s, const PowerLaw& psi) {
  if (a_vec.size() != r.size() || b_vec.size() != s.size())
    throw DomainError("nrs_reduce: modulus/residue length mismatch");
  for (std::size_t i = 0; i < a_vec.size(); ++i) {
    if (a_vec[i] < 1 || r[i] < 0 || r[i] >= a_vec[i])
      throw DomainError("nrs_reduce: need 0 <= r_i < a_i");
  }
  for (std::size_t j = 0; j < b_vec.size(); ++j) {
    if (b_vec[j] < 1 || s[j] < 0 || s[j] >= b_vec[j])
      throw DomainError("nrs_reduce: need 0 <= s_j < b_j");
  }
  const int n = static_cast<int>(b_vec.size());

  const long long a = lcm_vec(a_vec);
  const long long b = lcm_vec(b_vec);

  std::vector<Rat> shift(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) shift[i] = Rat(r[i], a);

  ApproxFunction combined = ApproxFunction::entrywise_mask(
      ApproxFunction::univariate(n, psi), s, b_vec, Rat(1, a));
  std::vector<ApproxFunction> classes;
  for (long long cls = 0; cls < b; ++cls) {
    classes.push_back(ApproxFunction::gcd_class_mask(combined, b, cls));
  }
  return NrsReduction{a, b, TargetFamily::inhomogeneous(std::move(shift)),
                      std::move(combined), std::move(classes)};
}

}  // namespace limset
