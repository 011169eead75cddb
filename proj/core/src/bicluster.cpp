#include "ltax/bicluster.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <thread>

namespace ltax {

Rational::Rational(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
  if (den == 0) throw Error(ErrorCode::empty_block, "rational with zero denominator");
}

namespace {

std::uint64_t parse_digits(std::string_view digits, std::string_view whole) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw Error(ErrorCode::parse_error, "not a number: '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  if (!text.empty() && text.front() == '-') {
    throw Error(ErrorCode::density_out_of_range, "negative value '" + std::string(text) + "'");
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto den = parse_digits(text.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorCode::parse_error, "zero denominator in '" + std::string(text) + "'");
    return Rational(parse_digits(text.substr(0, slash), text), den);
  }
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_digits(text, text), 1);
  auto int_part = text.substr(0, dot);
  auto frac = text.substr(dot + 1);
  if (frac.size() > 18 || (int_part.empty() && frac.empty())) {
    throw Error(ErrorCode::parse_error, "unsupported decimal '" + std::string(text) + "'");
  }
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const std::uint64_t whole = int_part.empty() ? 0 : parse_digits(int_part, text);
  const std::uint64_t part = frac.empty() ? 0 : parse_digits(frac, text);
  return Rational(whole * den + part, den);
}

Rational Rational::reduced() const {
  const auto g = std::gcd(num_, den_);
  return g == 0 ? *this : Rational(num_ / g, den_ / g);
}

std::string Rational::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

GeneralBicluster GeneralBicluster::make(ObjectSet rows, AttributeSet columns, bool allow_empty) {
  if (!allow_empty && (rows.empty() || columns.empty())) {
    throw Error(ErrorCode::empty_block, "bicluster with an empty side");
  }
  return {std::move(rows), std::move(columns)};
}

Rational density(const FormalContext& ctx, const ObjectSet& rows, const AttributeSet& columns) {
  if (rows.universe() != ctx.object_count() || columns.universe() != ctx.attribute_count()) {
    throw Error(ErrorCode::index_out_of_range, "block does not belong to this context");
  }
  if (rows.empty() || columns.empty()) {
    throw Error(ErrorCode::empty_block, "density of a block with an empty side is undefined");
  }
  std::uint64_t hits = 0;
  rows.for_each([&](std::size_t g) { hits += ctx.row(g).intersection_size(columns); });
  return Rational(hits, static_cast<std::uint64_t>(rows.size()) * columns.size());
}

OABicluster oa_bicluster(const FormalContext& ctx, std::size_t object, std::size_t attribute) {
  if (!ctx.incident(object, attribute)) {
    throw Error(ErrorCode::not_incident,
                "('" + ctx.objects()[object] + "', '" + ctx.attributes()[attribute] +
                    "') is not an incident pair",
                {{"object", ctx.objects()[object]}, {"attribute", ctx.attributes()[attribute]}});
  }
  OABicluster b;
  b.object = object;
  b.attribute = attribute;
  b.extent = ctx.column(attribute);
  b.intent = ctx.row(object);
  b.density = density(ctx, b.extent, b.intent);
  return b;
}

namespace {

struct BlockKeyLess {
  bool operator()(const std::pair<ObjectSet, AttributeSet>& a,
                  const std::pair<ObjectSet, AttributeSet>& b) const {
    if (a.first != b.first) return lectic_less(a.first, b.first);
    return lectic_less(a.second, b.second);
  }
};

using BlockMap = std::map<std::pair<ObjectSet, AttributeSet>, OABicluster, BlockKeyLess>;

void mine_rows(const FormalContext& ctx, const Rational& rho_min, std::size_t begin,
               std::size_t end, BlockMap& out) {
  for (std::size_t g = begin; g < end; ++g) {
    ctx.row(g).for_each([&](std::size_t m) {
      std::pair key{ctx.column(m), ctx.row(g)};
      if (out.contains(key)) return;
      auto b = oa_bicluster(ctx, g, m);
      if (b.density >= rho_min) out.emplace(std::move(key), std::move(b));
    });
  }
}

}  // namespace

std::vector<OABicluster> mine_dense(const FormalContext& ctx, const Rational& rho_min,
                                    const MiningOptions& options) {
  if (rho_min > Rational(1, 1)) {
    throw Error(ErrorCode::density_out_of_range,
                "minimum density " + rho_min.to_string() + " outside [0, 1]");
  }

  const std::size_t n = ctx.object_count();
  unsigned workers = options.workers ? options.workers : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1)));

  std::vector<BlockMap> partial(workers);
  if (workers == 1) {
    mine_rows(ctx, rho_min, 0, n, partial[0]);
  } else {
    std::vector<std::jthread> threads;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(n, w * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      threads.emplace_back([&, w, begin, end] { mine_rows(ctx, rho_min, begin, end, partial[w]); });
    }
  }

  // Chunks are in object order, so the first chunk that holds a block also
  // holds its least generator.
  BlockMap merged;
  for (auto& part : partial) {
    for (auto& [key, b] : part) merged.try_emplace(key, std::move(b));
  }
  std::vector<OABicluster> out;
  out.reserve(merged.size());
  for (auto& [key, b] : merged) out.push_back(std::move(b));
  return out;
}

bool is_formal_concept(const FormalContext& ctx, const ObjectSet& rows,
                       const AttributeSet& columns) {
  return derive_objects(ctx, rows) == columns && derive_attributes(ctx, columns) == rows;
}

GeneralBicluster rule_to_bicluster(const FormalContext& ctx, const AttributeSet& premise,
                                   const AttributeSet& conclusion, RuleVariant variant) {
  const auto a = derive_attributes(ctx, premise);
  const auto b = derive_attributes(ctx, conclusion);
  auto rows = variant == RuleVariant::union_of_extents ? (a | b) : (a & b);
  return GeneralBicluster::make(std::move(rows), premise | conclusion, true);
}

}  // namespace ltax
