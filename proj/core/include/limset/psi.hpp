#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "limset/rational.hpp"
#include "limset/targets.hpp"

namespace limset {

// c / x^tau on positive integers. tau = 0 gives a constant; the integer
// exponent keeps every value an exact rational.
struct PowerLaw {
  Rat coeff = 0;
  unsigned tau = 0;
  Rat value(long long x) const;
  bool operator==(const PowerLaw&) const = default;
};

// Approximating function psi: Z_+^n -> R_+. Value type; wrapper kinds
// (masks, scaling) share their base immutably.
class ApproxFunction {
 public:
  enum class Kind {
    FiniteSupport,    // explicit table q -> value
    Univariate,       // psi(q) = g(|q|)
    Ray,              // supported on t * dir, value g(t)
    AlternatingAxes,  // n=2: (d,0) for odd d, (0,d) for even d, value g(d)
    EntrywiseMask,    // base masked to q = residues (mod moduli), scaled
    GcdClassMask,     // base masked to gcd(q) = residue (mod modulus)
    ChowTechnau,      // g(|q|) / prod ||gcd(q)*alpha_i - gamma_i||
    Scaled,           // factor * base
  };

  static ApproxFunction finite_support(int n, std::map<IntVec, Rat> table);
  static ApproxFunction univariate(int n, PowerLaw g);
  static ApproxFunction ray(IntVec direction, PowerLaw g);
  static ApproxFunction alternating_axes(PowerLaw g);
  static ApproxFunction entrywise_mask(ApproxFunction base, IntVec residues, IntVec moduli,
                                       Rat scale);
  static ApproxFunction gcd_class_mask(ApproxFunction base, long long modulus,
                                       long long residue);
  static ApproxFunction chow_technau(int n, std::vector<Rat> alphas, std::vector<Rat> gammas,
                                     PowerLaw g);
  static ApproxFunction scaled(ApproxFunction base, Rat factor);

  Kind kind() const { return kind_; }
  int dim() const { return n_; }
  std::string kind_name() const;

  // psi(q); throws SingularityError when a Chow-Technau denominator vanishes
  Rat value(const IntVec& q) const;

  // Walk the support restricted to lo <= |q| <= hi. Dense kinds
  // (univariate, Chow-Technau) enumerate the whole orthant window.
  void for_support(long long lo, long long hi,
                   const std::function<void(const IntVec&, const Rat&)>& visit) const;

  bool dense_support() const;

  // sup over all q of psi(q), when certifiable; nullopt otherwise
  std::optional<Rat> sup_bound() const;

  const std::map<IntVec, Rat>& table() const { return table_; }
  const PowerLaw& rule() const { return rule_; }
  const IntVec& direction() const { return dir_; }
  const ApproxFunction& base() const { return *base_; }
  const IntVec& mask_residues() const { return mask_residues_; }
  const IntVec& mask_moduli() const { return mask_moduli_; }
  long long gcd_modulus() const { return gcd_modulus_; }
  long long gcd_residue() const { return gcd_residue_; }
  const Rat& factor() const { return factor_; }
  const std::vector<Rat>& alphas() const { return alphas_; }
  const std::vector<Rat>& gammas() const { return gammas_; }

  bool operator==(const ApproxFunction& o) const;

 private:
  ApproxFunction() = default;

  Kind kind_ = Kind::FiniteSupport;
  int n_ = 1;
  std::map<IntVec, Rat> table_;
  PowerLaw rule_;
  IntVec dir_;
  std::shared_ptr<const ApproxFunction> base_;
  IntVec mask_residues_, mask_moduli_;
  long long gcd_modulus_ = 1, gcd_residue_ = 0;
  Rat factor_ = 1;
  std::vector<Rat> alphas_, gammas_;
};

Rat eval_psi(const ApproxFunction& f, const IntVec& q);

// prod_i ||d*alpha_i - gamma_i|| for a Chow-Technau function; exact
Rat resonance_product(const std::vector<Rat>& alphas, const std::vector<Rat>& gammas,
                      long long d);

// --- Psi_Q transform ------------------------------------------------------

enum class TransformStatus { Exact, TailBounded, LowerBoundOnly, Infinite };

std::string transform_status_name(TransformStatus s);

struct TransformEntry {
  Rat sum_pow_m = 0;  // Psi_Q(d)^m, or the computed partial sum for non-exact statuses
  TransformStatus status = TransformStatus::Exact;
  Rat tail_bound = 0;  // valid when status == TailBounded
};

struct TransformResult {
  long long Q = 1;
  int m = 1;
  std::map<long long, TransformEntry> values;

  const TransformEntry& at(long long d) const;
  // Psi_Q(d) itself; exact when m = 1, a double root otherwise
  double radius_approx(long long d) const;
};

struct TransformOptions {
  long long shell_cap = 64;  // primitive-shell truncation for dense kinds
};

TransformResult psi_transform(const ApproxFunction& f, int m, long long Q, long long d_max,
                              const TransformOptions& opts = {});

// --- divergence series ----------------------------------------------------

enum class SeriesKind { KhintchineGroshev, Orthant, DuffinSchaeffer, Catlin };
enum class ConvergenceTag { Convergent, Divergent, Unknown };

std::string series_kind_name(SeriesKind k);
std::string convergence_tag_name(ConvergenceTag t);

struct SeriesResult {
  Rat partial = 0;
  long long limit = 0;
  ConvergenceTag tag = ConvergenceTag::Unknown;
};

// Exact partial sum up to the limit (q <= limit for Khintchine-Groshev,
// |q| <= limit otherwise). The tag is analytic, from built-in exponents
// only; it is never inferred from the numerics.
SeriesResult series_partial_sum(SeriesKind kind, const ApproxFunction& f, int n, int m,
                                long long limit);

// #{p in Z^m : |p| <= |q|, gcd(p,q) = 1} (joint gcd over all entries)
unsigned long long catlin_phi(const IntVec& q, int m);

// sup_{t>=1} psi(t q)/(t |q|), truncated with a boundedness certificate
Rat catlin_sup_term(const ApproxFunction& f, const IntVec& q);

// --- congruence reduction ---------------------------------------------------

// Rewrites numerator/denominator congruence constraints as a shifted target
// family plus masked, 1/a-scaled approximating functions.
struct NrsReduction {
  long long a = 1;  // lcm of the numerator moduli
  long long b = 1;  // lcm of the denominator moduli
  TargetFamily family;
  ApproxFunction combined;              // entrywise-masked, scaled psi-bar
  std::vector<ApproxFunction> classes;  // psi-bar_s for s = 0..b-1
};

NrsReduction nrs_reduce(const IntVec& a_vec, const IntVec& b_vec, const IntVec& r,
                        const IntVec& s, const PowerLaw& psi);

// Parse/serialize (finite-support tables follow the documented JSON schema).
ApproxFunction psi_from_json_text(const std::string& text);

}  // namespace limset
