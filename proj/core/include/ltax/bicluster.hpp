#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ltax/context.hpp"

namespace ltax {

__extension__ using uint128 = unsigned __int128;

/// Exact non-negative fraction. Kept unreduced so a density reads as
/// "incidences / cells"; comparisons are by value.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::uint64_t num, std::uint64_t den);

  /// Accepts "p/q", integers and plain decimals such as "0.8".
  static Rational parse(std::string_view text);

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  Rational reduced() const;
  std::string to_string() const;

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return static_cast<uint128>(a.num_) * b.den_ ==
           static_cast<uint128>(b.num_) * a.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    return static_cast<uint128>(a.num_) * b.den_ <=>
           static_cast<uint128>(b.num_) * a.den_;
  }

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

/// (m', g') generated by an incident pair (g, m).
struct OABicluster {
  std::size_t object = 0;     // generator g
  std::size_t attribute = 0;  // generator m
  ObjectSet extent;           // m'
  AttributeSet intent;        // g'
  Rational density;
};

/// Arbitrary block (rows, columns).
struct GeneralBicluster {
  ObjectSet rows;
  AttributeSet columns;

  /// Rejects an empty side unless `allow_empty` is set.
  static GeneralBicluster make(ObjectSet rows, AttributeSet columns, bool allow_empty = false);

  friend bool operator==(const GeneralBicluster&, const GeneralBicluster&) = default;
};

/// |I cap (rows x columns)| / (|rows| |columns|). Empty sides are an error.
Rational density(const FormalContext& ctx, const ObjectSet& rows, const AttributeSet& columns);

/// Requires (g, m) in I.
OABicluster oa_bicluster(const FormalContext& ctx, std::size_t object, std::size_t attribute);

struct MiningOptions {
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
};

/// Distinct OA-biclusters with density >= rho_min, sorted lectically by
/// extent then intent. Each keeps its least generating pair (object-major).
std::vector<OABicluster> mine_dense(const FormalContext& ctx, const Rational& rho_min,
                                    const MiningOptions& options = {});

/// rows' = columns and columns' = rows.
bool is_formal_concept(const FormalContext& ctx, const ObjectSet& rows,
                       const AttributeSet& columns);

enum class RuleVariant { union_of_extents, intersection_of_extents };

/// Block associated with the rule A -> B: (A' u B', A u B) or (A' n B', A u B).
GeneralBicluster rule_to_bicluster(const FormalContext& ctx, const AttributeSet& premise,
                                   const AttributeSet& conclusion, RuleVariant variant);

}  // namespace ltax
