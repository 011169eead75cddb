#include "ltax/implications.hpp"

#include <algorithm>
#include <thread>

#include "ltax/lectic.hpp"

namespace ltax {

Implication::Implication(AttributeSet premise, AttributeSet conclusion)
    : premise_(std::move(premise)), conclusion_(std::move(conclusion)) {
  if (premise_.universe() != conclusion_.universe()) {
    throw Error(ErrorCode::universe_mismatch,
                "premise and conclusion range over different attribute sets");
  }
  conclusion_ -= premise_;
}

std::string_view to_string(BaseProvenance provenance) noexcept {
  switch (provenance) {
    case BaseProvenance::computed_dg: return "computed-DG";
    case BaseProvenance::exploration_accepted: return "exploration-accepted";
    case BaseProvenance::user_loaded: return "user-loaded";
  }
  return "user-loaded";
}

BaseProvenance parse_provenance(std::string_view text) {
  if (text == "computed-DG") return BaseProvenance::computed_dg;
  if (text == "exploration-accepted") return BaseProvenance::exploration_accepted;
  if (text == "user-loaded") return BaseProvenance::user_loaded;
  throw Error(ErrorCode::malformed_payload, "unknown base provenance '" + std::string(text) + "'");
}

bool holds(const FormalContext& ctx, const AttributeSet& premise, const AttributeSet& conclusion) {
  return derive_attributes(ctx, premise).is_subset_of(derive_attributes(ctx, conclusion));
}

bool holds(const FormalContext& ctx, const Implication& implication) {
  return holds(ctx, implication.premise(), implication.conclusion());
}

std::size_t support(const FormalContext& ctx, const Implication& implication) {
  return derive_attributes(ctx, implication.full_conclusion()).size();
}

void annotate_support(const FormalContext& ctx, ImplicationBase& base) {
  for (auto& imp : base.implications) imp.support = support(ctx, imp);
}

AttributeSet implication_closure(std::span<const Implication> implications,
                                 const AttributeSet& attributes) {
  AttributeSet out = attributes;
  std::vector<char> fired(implications.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < implications.size(); ++i) {
      if (fired[i] || !implications[i].premise().is_subset_of(out)) continue;
      fired[i] = 1;
      if (!implications[i].conclusion().is_subset_of(out)) {
        out |= implications[i].conclusion();
        changed = true;
      }
    }
  }
  return out;
}

ImplicationBase duquenne_guigues_base(const FormalContext& ctx) {
  ImplicationBase base;
  base.provenance = BaseProvenance::computed_dg;
  auto close_under_base = [&](const AttributeSet& x) {
    return implication_closure(base.implications, x);
  };

  // Walk the sets closed under the base found so far in lectic order; each
  // one that is not an intent is the next pseudo-intent.
  std::optional<AttributeSet> current = ctx.no_attributes();
  while (current) {
    auto closed = closure_attributes(ctx, *current);
    if (closed != *current) base.implications.emplace_back(*current, std::move(closed));
    current = next_closed(*current, close_under_base);
  }
  annotate_support(ctx, base);
  return base;
}

BaseReport verify_base(const FormalContext& ctx, const ImplicationBase& base,
                       const VerifyOptions& options) {
  const std::size_t n = ctx.attribute_count();
  for (const auto& imp : base.implications) {
    if (imp.premise().universe() != n) {
      throw Error(ErrorCode::universe_mismatch,
                  "implication over " + std::to_string(imp.premise().universe()) +
                      " attributes checked against a context with " + std::to_string(n));
    }
  }
  if (n > options.max_attributes || n >= 63) {
    throw Error(ErrorCode::attribute_limit,
                "exhaustive completeness check limited to " +
                    std::to_string(std::min<std::size_t>(options.max_attributes, 62)) +
                    " attributes, context has " + std::to_string(n));
  }

  BaseReport report;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (!holds(ctx, base.implications[i])) report.violated.push_back(i);
  }
  report.sound = report.violated.empty();

  const std::uint64_t total = std::uint64_t{1} << n;
  unsigned workers = options.workers ? options.workers : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, std::min<std::uint64_t>(total, 64)));
  std::vector<std::optional<AttributeSet>> witness(workers);
  {
    auto sweep = [&](unsigned w) {
      for (std::uint64_t mask = w; mask < total; mask += workers) {
        const auto x = AttributeSet::from_mask(n, mask);
        if (implication_closure(base, x) != closure_attributes(ctx, x)) {
          if (!witness[w] || lectic_less(x, *witness[w])) witness[w] = x;
        }
      }
    };
    if (workers == 1) {
      sweep(0);
    } else {
      std::vector<std::jthread> threads;
      for (unsigned w = 0; w < workers; ++w) threads.emplace_back(sweep, w);
    }
  }
  for (auto& w : witness) {
    if (w && (!report.incompleteness_witness || lectic_less(*w, *report.incompleteness_witness))) {
      report.incompleteness_witness = std::move(w);
    }
  }
  report.complete = !report.incompleteness_witness.has_value();

  std::vector<Implication> rest;
  for (std::size_t i = 0; i < base.size(); ++i) {
    rest.clear();
    for (std::size_t j = 0; j < base.size(); ++j) {
      if (j != i) rest.push_back(base.implications[j]);
    }
    const auto& imp = base.implications[i];
    if (imp.conclusion().is_subset_of(implication_closure(rest, imp.premise()))) {
      report.redundant.push_back(i);
    }
  }
  report.minimal = report.redundant.empty();
  return report;
}

namespace {

std::string braced(const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out + "}";
}

}  // namespace

std::string render_implication(const std::vector<std::string>& premise,
                               const std::vector<std::string>& conclusion,
                               std::optional<std::size_t> support) {
  std::string out = braced(premise) + " -> " + braced(conclusion);
  if (support) out += "  sup=" + std::to_string(*support);
  return out;
}

std::string render_implication(const FormalContext& ctx, const Implication& implication) {
  return render_implication(ctx.attribute_names(implication.premise()),
                            ctx.attribute_names(implication.conclusion()), implication.support);
}

}  // namespace ltax
