#pragma once

/**
 * @file search.hpp
 * @brief Exhaustive minimum-measure search over bounded families of monic polynomials.
 *
 * The family for (degree n, coefficient bound B) is every monic
 * x^n + a_{n-1} x^{n-1} + ... + a_0 with a_i in [-B, B] and a_0 != 0, in
 * lexicographic order of the tuple (a_0, ..., a_{n-1}). Shards are
 * contiguous index blocks of that order.
 *
 * Each polynomial is scanned exactly once and lands in one bucket:
 *   - skipped_pruned: not self-reciprocal while reciprocal_only is set
 *     (non-reciprocal polynomials have M >= 1.3247..., so a search for
 *     smaller measures may ignore them);
 *   - skipped_cyclotomic: a product of cyclotomic polynomials (M = 1);
 *   - measured.
 * No decision depends on the running best, so counts do not depend on the
 * shard layout.
 *
 * Ties (measures within kTieEpsilon) prefer a polynomial with a real root
 * above 1, then the lexicographically smaller coefficient tuple.
 */

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lehmer/cyclotomic.hpp"
#include "lehmer/mahler.hpp"
#include "lehmer/polynomial.hpp"
#include "lehmer/trace.hpp"

namespace lehmer {

inline constexpr double kTieEpsilon = 1e-11;
inline constexpr double kRecordTolerance = 1e-12;
inline constexpr double kNearBestWindow = 1e-6;
inline constexpr const char* kCheckpointHeader = "lehmer-search-v1";

struct SearchSpec {
  int degree = 1;
  int coeff_bound = 1;
  bool reciprocal_only = false;
  double tol = kDefaultTolerance;
  int shard_index = 0;
  int shard_count = 1;

  void validate() const {
    if (degree < 1) throw DomainError("search degree must be >= 1");
    if (coeff_bound < 1) throw DomainError("coefficient bound must be >= 1");
    if (!(tol > 0)) throw DomainError("search tolerance must be positive");
    if (shard_count < 1 || shard_index < 0 || shard_index >= shard_count)
      throw DomainError("shard index must satisfy 0 <= index < count");
    (void)family_size();
  }

  /// 2B (2B + 1)^(n - 1); throws if it does not fit in 63 bits.
  std::uint64_t family_size() const {
    const std::uint64_t limit = std::uint64_t{1} << 62;
    std::uint64_t size = 2 * static_cast<std::uint64_t>(coeff_bound);
    for (int i = 1; i < degree; ++i) {
      if (size > limit / (2 * static_cast<std::uint64_t>(coeff_bound) + 1)) throw DomainError("search family too large");
      size *= 2 * static_cast<std::uint64_t>(coeff_bound) + 1;
    }
    return size;
  }

  /// [begin, end) of this shard's block.
  std::pair<std::uint64_t, std::uint64_t> shard_range() const {
    const auto size = static_cast<unsigned __int128>(family_size());
    auto begin = static_cast<std::uint64_t>(size * static_cast<unsigned>(shard_index) / static_cast<unsigned>(shard_count));
    auto end = static_cast<std::uint64_t>(size * static_cast<unsigned>(shard_index + 1) / static_cast<unsigned>(shard_count));
    return {begin, end};
  }

  SearchSpec with_shard(int index, int count) const {
    SearchSpec s = *this;
    s.shard_index = index;
    s.shard_count = count;
    return s;
  }

  bool same_family(const SearchSpec& o) const {
    return degree == o.degree && coeff_bound == o.coeff_bound && reciprocal_only == o.reciprocal_only && tol == o.tol;
  }

  friend bool operator==(const SearchSpec&, const SearchSpec&) = default;
};

// ---------------------------------------------------------------------------
// Enumeration

namespace detail {

/// Coefficient tuple (a_0, ..., a_{n-1}) at a family index.
inline std::vector<int> decode_index(const SearchSpec& spec, std::uint64_t index) {
  const int b = spec.coeff_bound;
  const std::uint64_t radix = 2 * static_cast<std::uint64_t>(b) + 1;
  std::vector<int> a(static_cast<std::size_t>(spec.degree));
  for (std::size_t i = a.size(); i-- > 1;) {
    a[i] = static_cast<int>(index % radix) - b;
    index /= radix;
  }
  int d = static_cast<int>(index) - b;  // digit 0..2B-1 over -B..-1, 1..B
  a[0] = d >= 0 ? d + 1 : d;
  return a;
}

inline std::uint64_t encode_tuple(const SearchSpec& spec, const std::vector<int>& a) {
  const int b = spec.coeff_bound;
  const std::uint64_t radix = 2 * static_cast<std::uint64_t>(b) + 1;
  std::uint64_t index = static_cast<std::uint64_t>(a[0] > 0 ? a[0] - 1 + b : a[0] + b);
  for (std::size_t i = 1; i < a.size(); ++i) index = index * radix + static_cast<std::uint64_t>(a[i] + b);
  return index;
}

/// P* = +-P for the monic polynomial with lower coefficients a.
inline bool tuple_is_self_reciprocal(const std::vector<int>& a) {
  const int s = a[0];
  if (s != 1 && s != -1) return false;
  const std::size_t n = a.size();
  auto coeff = [&](std::size_t i) { return i == n ? 1 : a[i]; };
  for (std::size_t i = 0; i <= n / 2; ++i)
    if (coeff(n - i) != s * coeff(i)) return false;
  return true;
}

inline IntPolynomial tuple_polynomial(const std::vector<int>& a) {
  std::vector<Integer> c(a.begin(), a.end());
  c.emplace_back(1);
  return IntPolynomial(std::move(c));
}

/// The tuple of a polynomial in the family, or nothing if it is not a member.
inline std::optional<std::vector<int>> family_tuple(const SearchSpec& spec, const IntPolynomial& p) {
  if (p.degree() != spec.degree || !p.is_monic() || p.constant_term() == 0) return std::nullopt;
  std::vector<int> a;
  for (int i = 0; i < spec.degree; ++i) {
    const Integer& c = p[static_cast<std::size_t>(i)];
    if (c > spec.coeff_bound || c < -spec.coeff_bound) return std::nullopt;
    a.push_back(c.convert_to<int>());
  }
  return a;
}

}  // namespace detail

/// Walks one shard of the family in order, optionally restricted to
/// self-reciprocal members.
class FamilyStream {
 public:
  explicit FamilyStream(const SearchSpec& spec) : spec_(spec) {
    spec_.validate();
    auto [begin, end] = spec_.shard_range();
    index_ = begin;
    end_ = end;
    if (index_ < end_) tuple_ = detail::decode_index(spec_, index_);
  }

  std::optional<IntPolynomial> next() {
    while (index_ < end_) {
      std::vector<int> current = tuple_;
      step();
      if (!spec_.reciprocal_only || detail::tuple_is_self_reciprocal(current)) return detail::tuple_polynomial(current);
    }
    return std::nullopt;
  }

 private:
  void step() {
    if (++index_ < end_) tuple_ = detail::decode_index(spec_, index_);
  }

  SearchSpec spec_;
  std::uint64_t index_ = 0, end_ = 0;
  std::vector<int> tuple_;
};

inline std::vector<IntPolynomial> enumerate(const SearchSpec& spec) {
  std::vector<IntPolynomial> out;
  FamilyStream stream(spec);
  while (auto p = stream.next()) out.push_back(std::move(*p));
  return out;
}

// ---------------------------------------------------------------------------
// Records

struct SearchRecord {
  std::optional<IntPolynomial> best_polynomial;
  std::optional<MeasureResult> best_measure;
  std::uint64_t scanned = 0;
  std::uint64_t measured = 0;
  std::uint64_t skipped_cyclotomic = 0;
  std::uint64_t skipped_pruned = 0;
  std::chrono::nanoseconds elapsed{0};
};

namespace detail {

inline bool has_real_root_above_one(const IntPolynomial& p) {
  return SturmSequence(p).count(Rational(1), std::nullopt) > 0;
}

/// Strict "a is a better record than b".
inline bool better_record(const IntPolynomial& a, const MeasureResult& ma, const IntPolynomial& b,
                          const MeasureResult& mb) {
  if (ma.value < mb.value - kTieEpsilon) return true;
  if (ma.value > mb.value + kTieEpsilon) return false;
  const bool ra = has_real_root_above_one(a), rb = has_real_root_above_one(b);
  if (ra != rb) return ra;
  const auto ca = a.coefficients(), cb = b.coefficients();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

inline void offer(SearchRecord& rec, const IntPolynomial& p, const MeasureResult& m) {
  if (!rec.best_polynomial || better_record(p, m, *rec.best_polynomial, *rec.best_measure)) {
    rec.best_polynomial = p;
    rec.best_measure = m;
  }
}

}  // namespace detail

/// Min on measure (with the tie rule), sum on counts. Associative and commutative.
inline SearchRecord merge(const SearchRecord& a, const SearchRecord& b) {
  SearchRecord out = a;
  if (b.best_polynomial) detail::offer(out, *b.best_polynomial, *b.best_measure);
  out.scanned += b.scanned;
  out.measured += b.measured;
  out.skipped_cyclotomic += b.skipped_cyclotomic;
  out.skipped_pruned += b.skipped_pruned;
  out.elapsed += b.elapsed;
  return out;
}

/// One shard's progress: the last fully processed family member (if any).
struct ShardState {
  SearchSpec spec;
  SearchRecord record;
  std::optional<IntPolynomial> cursor;

  std::uint64_t next_index() const {
    if (!cursor) return spec.shard_range().first;
    return detail::encode_tuple(spec, *detail::family_tuple(spec, *cursor)) + 1;
  }
  bool complete() const { return next_index() >= spec.shard_range().second; }
};

inline ShardState start_shard(const SearchSpec& spec) {
  spec.validate();
  return ShardState{spec, {}, std::nullopt};
}

/// Processes up to max_items family members (all remaining if unset).
inline void advance_shard(ShardState& st, std::optional<std::uint64_t> max_items = std::nullopt) {
  const auto t0 = std::chrono::steady_clock::now();
  const SearchSpec& spec = st.spec;
  std::uint64_t index = st.next_index();
  const std::uint64_t end = spec.shard_range().second;
  std::uint64_t budget = max_items.value_or(end);
  SearchRecord& rec = st.record;

  for (; index < end && budget > 0; ++index, --budget) {
    const std::vector<int> tuple = detail::decode_index(spec, index);
    const bool reciprocal = detail::tuple_is_self_reciprocal(tuple);
    IntPolynomial p = detail::tuple_polynomial(tuple);
    ++rec.scanned;
    if (spec.reciprocal_only && !reciprocal) {
      ++rec.skipped_pruned;
    } else if (reciprocal && is_cyclotomic_product(p)) {
      ++rec.skipped_cyclotomic;
    } else {
      MeasureResult m = mahler_measure(p, spec.tol);
      // Anything that could become the record is re-measured tightly, so the
      // stored value never depends on scan order.
      if ((!rec.best_measure || m.value <= rec.best_measure->value + kNearBestWindow) && spec.tol > kRecordTolerance)
        m = mahler_measure(p, kRecordTolerance);
      ++rec.measured;
      detail::offer(rec, p, m);
    }
    st.cursor = std::move(p);
  }
  rec.elapsed += std::chrono::steady_clock::now() - t0;
}

/// Runs one shard (spec.shard_index of spec.shard_count) to completion.
inline SearchRecord search_min_measure(const SearchSpec& spec) {
  ShardState st = start_shard(spec);
  advance_shard(st);
  return st.record;
}

/// Advances every incomplete shard on its own thread, in rounds of at most
/// round_size items per shard, calling on_quiescent after each round while
/// no worker is running. per_shard_budget caps the items processed per shard
/// in this call.
inline void run_shards(std::vector<ShardState>& states, std::optional<std::uint64_t> per_shard_budget = std::nullopt,
                       std::optional<std::uint64_t> round_size = std::nullopt,
                       const std::function<void(const std::vector<ShardState>&)>& on_quiescent = {}) {
  std::vector<std::uint64_t> remaining(states.size(), per_shard_budget.value_or(UINT64_MAX));
  while (true) {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(states.size());
    bool any = false;
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (states[i].complete() || remaining[i] == 0) continue;
      any = true;
      std::uint64_t chunk = std::min(remaining[i], round_size.value_or(UINT64_MAX));
      remaining[i] -= chunk;
      workers.emplace_back([&, i, chunk] {
        try {
          advance_shard(states[i], chunk);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    if (!any) break;
    if (on_quiescent) on_quiescent(states);
  }
}

inline std::vector<ShardState> start_shards(const SearchSpec& base, int shards) {
  std::vector<ShardState> states;
  for (int i = 0; i < shards; ++i) states.push_back(start_shard(base.with_shard(i, shards)));
  return states;
}

inline SearchRecord merge_shards(const std::vector<ShardState>& states) {
  SearchRecord out;
  for (const auto& s : states) out = merge(out, s.record);
  return out;
}

/// Full family search split over `shards` concurrent shards.
inline SearchRecord run_sharded(const SearchSpec& base, int shards) {
  auto states = start_shards(base, shards);
  run_shards(states);
  return merge_shards(states);
}

// ---------------------------------------------------------------------------
// Checkpoint files
//
//   lehmer-search-v1
//   spec degree=10 coeff_bound=1 reciprocal_only=1 tol=<17g> shard=0/1 hash=<16 hex>
//   cursor <wire polynomial>|none
//   record best=<wire>|none value=<17g> radius=<17g> method=<name>
//   record scanned=N measured=N skipped_cyclotomic=N skipped_pruned=N elapsed_ns=N
//   (spec/cursor/record/record repeated per shard)
//   checksum <16 hex>

namespace detail {

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string spec_fields(const SearchSpec& s) {
  return "degree=" + std::to_string(s.degree) + " coeff_bound=" + std::to_string(s.coeff_bound) +
         " reciprocal_only=" + (s.reciprocal_only ? "1" : "0") + " tol=" + format_double(s.tol) +
         " shard=" + std::to_string(s.shard_index) + "/" + std::to_string(s.shard_count);
}

inline std::vector<std::pair<std::string, std::string>> split_fields(const std::string& line, const std::string& tag) {
  std::istringstream in(line);
  std::string word;
  in >> word;
  if (word != tag) throw LoadError("expected '" + tag + "' line, found: " + line);
  std::vector<std::pair<std::string, std::string>> out;
  while (in >> word) {
    auto eq = word.find('=');
    if (eq == std::string::npos) throw LoadError("malformed field '" + word + "'");
    out.emplace_back(word.substr(0, eq), word.substr(eq + 1));
  }
  return out;
}

inline const std::string& field(const std::vector<std::pair<std::string, std::string>>& f, const std::string& key) {
  for (const auto& [k, v] : f)
    if (k == key) return v;
  throw LoadError("missing field '" + key + "'");
}

template <class T>
T parse_number(const std::string& s) {
  std::istringstream in(s);
  T v{};
  in >> v;
  if (!in || !in.eof()) throw LoadError("malformed number '" + s + "'");
  return v;
}

inline double parse_double(const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw LoadError("malformed number '" + s + "'");
  return v;
}

inline MeasureMethod parse_method(const std::string& s) {
  for (auto m : {MeasureMethod::RootProduct, MeasureMethod::JensenQuadrature, MeasureMethod::GraeffeCrossCheck})
    if (s == to_string(m)) return m;
  throw LoadError("unknown measure method '" + s + "'");
}

}  // namespace detail

inline std::string checkpoint_text(const std::vector<ShardState>& states) {
  std::string body = std::string(kCheckpointHeader) + "\n";
  for (const auto& st : states) {
    const std::string fields = detail::spec_fields(st.spec);
    body += "spec " + fields + " hash=" + detail::hex64(detail::fnv1a(fields)) + "\n";
    body += "cursor " + (st.cursor ? to_wire(*st.cursor) : std::string("none")) + "\n";
    const auto& r = st.record;
    if (r.best_polynomial)
      body += "record best=" + to_wire(*r.best_polynomial) + " value=" + detail::format_double(r.best_measure->value) +
              " radius=" + detail::format_double(r.best_measure->error_radius) +
              " method=" + to_string(r.best_measure->method) + "\n";
    else
      body += "record best=none\n";
    body += "record scanned=" + std::to_string(r.scanned) + " measured=" + std::to_string(r.measured) +
            " skipped_cyclotomic=" + std::to_string(r.skipped_cyclotomic) +
            " skipped_pruned=" + std::to_string(r.skipped_pruned) +
            " elapsed_ns=" + std::to_string(r.elapsed.count()) + "\n";
  }
  return body + "checksum " + detail::hex64(detail::fnv1a(body)) + "\n";
}

/// Parses and fully validates a checkpoint; any defect is a LoadError and
/// nothing is returned.
inline std::vector<ShardState> parse_checkpoint(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }
  if (lines.empty() || lines[0] != kCheckpointHeader)
    throw LoadError("not a checkpoint file or unsupported version (expected '" + std::string(kCheckpointHeader) + "')");
  if (lines.size() < 2 || lines.back().rfind("checksum ", 0) != 0) throw LoadError("checkpoint truncated");
  const std::size_t body_end = text.rfind("checksum ");
  if (detail::hex64(detail::fnv1a(text.substr(0, body_end))) != lines.back().substr(9))
    throw LoadError("checkpoint checksum mismatch");
  if ((lines.size() - 2) % 4 != 0 || lines.size() == 2) throw LoadError("checkpoint has an incomplete shard block");

  std::vector<ShardState> states;
  try {
    for (std::size_t i = 1; i + 1 < lines.size(); i += 4) {
      ShardState st;
      auto sf = detail::split_fields(lines[i], "spec");
      st.spec.degree = detail::parse_number<int>(detail::field(sf, "degree"));
      st.spec.coeff_bound = detail::parse_number<int>(detail::field(sf, "coeff_bound"));
      st.spec.reciprocal_only = detail::field(sf, "reciprocal_only") == "1";
      st.spec.tol = detail::parse_double(detail::field(sf, "tol"));
      const std::string& shard = detail::field(sf, "shard");
      auto slash = shard.find('/');
      if (slash == std::string::npos) throw LoadError("malformed shard field");
      st.spec.shard_index = detail::parse_number<int>(shard.substr(0, slash));
      st.spec.shard_count = detail::parse_number<int>(shard.substr(slash + 1));
      st.spec.validate();
      const std::string fields = detail::spec_fields(st.spec);
      if (detail::hex64(detail::fnv1a(fields)) != detail::field(sf, "hash")) throw LoadError("spec hash mismatch");

      std::string cursor = lines[i + 1];
      if (cursor.rfind("cursor ", 0) != 0) throw LoadError("expected cursor line");
      cursor = cursor.substr(7);
      if (cursor != "none") {
        IntPolynomial c = parse(cursor);
        auto tuple = detail::family_tuple(st.spec, c);
        if (!tuple) throw LoadError("cursor is not a member of the search family");
        auto idx = detail::encode_tuple(st.spec, *tuple);
        auto [begin, end] = st.spec.shard_range();
        if (idx < begin || idx >= end) throw LoadError("cursor lies outside its shard");
        st.cursor = std::move(c);
      }

      auto rf = detail::split_fields(lines[i + 2], "record");
      if (detail::field(rf, "best") != "none") {
        st.record.best_polynomial = parse(detail::field(rf, "best"));
        MeasureResult m;
        m.value = detail::parse_double(detail::field(rf, "value"));
        m.error_radius = detail::parse_double(detail::field(rf, "radius"));
        m.method = detail::parse_method(detail::field(rf, "method"));
        st.record.best_measure = m;
      }
      auto cf = detail::split_fields(lines[i + 3], "record");
      st.record.scanned = detail::parse_number<std::uint64_t>(detail::field(cf, "scanned"));
      st.record.measured = detail::parse_number<std::uint64_t>(detail::field(cf, "measured"));
      st.record.skipped_cyclotomic = detail::parse_number<std::uint64_t>(detail::field(cf, "skipped_cyclotomic"));
      st.record.skipped_pruned = detail::parse_number<std::uint64_t>(detail::field(cf, "skipped_pruned"));
      st.record.elapsed = std::chrono::nanoseconds(detail::parse_number<long long>(detail::field(cf, "elapsed_ns")));

      const auto& r = st.record;
      if (r.scanned != r.measured + r.skipped_cyclotomic + r.skipped_pruned)
        throw LoadError("record counts do not add up");
      if (r.scanned != st.next_index() - st.spec.shard_range().first)
        throw LoadError("record counts disagree with the cursor");
      if (r.best_polynomial.has_value() != (r.measured > 0)) throw LoadError("record best is inconsistent with counts");
      states.push_back(std::move(st));
    }
  } catch (const ParseError& e) {
    throw LoadError(std::string("checkpoint polynomial: ") + e.what());
  } catch (const DomainError& e) {
    throw LoadError(std::string("checkpoint spec: ") + e.what());
  }

  const int count = states.front().spec.shard_count;
  if (static_cast<int>(states.size()) != count) throw LoadError("checkpoint does not list every shard");
  for (int i = 0; i < count; ++i)
    if (states[static_cast<std::size_t>(i)].spec.shard_index != i || states[static_cast<std::size_t>(i)].spec.shard_count != count ||
        !states[static_cast<std::size_t>(i)].spec.same_family(states.front().spec))
      throw LoadError("checkpoint shard blocks are inconsistent");
  return states;
}

/// Writes via a temporary file and rename, so readers never see a partial file.
inline void save_checkpoint(const std::filesystem::path& path, const std::vector<ShardState>& states) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    out << checkpoint_text(states);
    if (!out.flush()) throw std::runtime_error("cannot write checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::vector<ShardState> load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open checkpoint " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_checkpoint(buf.str());
}

/// Single-shard save / resume.
inline void checkpoint_save(const SearchRecord& record, const SearchSpec& spec, const std::optional<IntPolynomial>& cursor,
                            const std::filesystem::path& path) {
  save_checkpoint(path, {ShardState{spec, record, cursor}});
}

inline ShardState checkpoint_resume(const std::filesystem::path& path) {
  auto states = load_checkpoint(path);
  if (states.size() != 1) throw LoadError("expected a single-shard checkpoint");
  return states.front();
}

}  // namespace lehmer
