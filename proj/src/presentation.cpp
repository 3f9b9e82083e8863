#include "fermat/presentation.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "fermat/error.hpp"

namespace fermat {

namespace {

constexpr std::size_t kBlock = 16;

}  // namespace

// ---------------------------------------------------------------------------
// FormulaEnumerator

FormulaEnumerator::FormulaEnumerator(const Tower& tower, std::size_t level)
    : tower_(tower), level_(level), gens_(2) {
  leaves_.push_back(tower.zero(level));
  leaves_.push_back(tower.one(level));
  for (std::size_t i = 0; i < level; ++i) {
    leaves_.push_back(tower.coerce(tower.gen_x(i), level));
    leaves_.push_back(tower.coerce(tower.gen_y(i), level));
  }
}

bool FormulaEnumerator::try_emit(const TowerElem& e, TowerElem& out) {
  TowerElem v = tower_.coerce(e, level_);
  if (!seen_.emplace(v, true).second) return false;
  gens_[size_].push_back(v);
  out = std::move(v);
  ++produced_;
  return true;
}

TowerElem FormulaEnumerator::next() {
  TowerElem out;
  while (true) {
    if (size_ == 1) {
      if (i_ < leaves_.size()) {
        if (try_emit(leaves_[i_++], out)) return out;
        continue;
      }
      size_ = 2;
      gens_.emplace_back();
      phase_ = 1;
      i_ = 0;
      continue;
    }
    const auto& prev = gens_[size_ - 1];
    if (phase_ == 1 || phase_ == 2) {
      if (i_ < prev.size()) {
        const TowerElem& a = prev[i_++];
        if (phase_ == 1) {
          if (try_emit(tower_.neg(a), out)) return out;
        } else if (!a.is_zero()) {
          if (try_emit(tower_.inv(a), out)) return out;
        }
        continue;
      }
      ++phase_;
      i_ = j_ = op_ = 0;
      split_ = 1;
      continue;
    }
    // Binary phase over sizes (split_, size_ - 1 - split_).
    if (split_ + 1 >= size_) {
      ++size_;
      gens_.emplace_back();
      phase_ = 1;
      i_ = 0;
      continue;
    }
    const auto& left = gens_[split_];
    const auto& right = gens_[size_ - 1 - split_];
    if (op_ < 4 && i_ < left.size() && j_ < right.size()) {
      const TowerElem& a = left[i_];
      const TowerElem& b = right[j_];
      if (++j_ == right.size()) {
        j_ = 0;
        ++i_;
      }
      switch (op_) {
        case 0:
          if (try_emit(tower_.add(a, b), out)) return out;
          break;
        case 1:
          if (try_emit(tower_.sub(a, b), out)) return out;
          break;
        case 2:
          if (try_emit(tower_.mul(a, b), out)) return out;
          break;
        default:
          if (!b.is_zero() && try_emit(tower_.div(a, b), out)) return out;
          break;
      }
      continue;
    }
    i_ = j_ = 0;
    if (++op_ >= 4) {
      op_ = 0;
      ++split_;
    }
  }
}

// ---------------------------------------------------------------------------
// Relabelings and specs

std::pair<TowerElem, TowerElem> apply_relabeling(const Tower& t, RelabelChoice r,
                                                 const TowerElem& x, const TowerElem& y) {
  switch (r) {
    case 0:
      return {x, y};
    case 1:
      return {y, x};
    case 2:
      return {t.neg(t.div(y, x)), t.inv(x)};
    case 3:
      return {t.inv(x), t.neg(t.div(y, x))};
    case 4:
      return {t.neg(t.div(x, y)), t.inv(y)};
    case 5:
      return {t.inv(y), t.neg(t.div(x, y))};
    default:
      throw PreconditionError("relabel index " + std::to_string(r) + " is outside 0..5");
  }
}

std::string ScrambleSpec::describe() const {
  std::ostringstream os;
  os << "swap={";
  for (std::size_t i = 0; i < swapped.size(); ++i) os << (i ? "," : "") << swapped[i];
  os << "} relabel=[";
  for (std::size_t i = 0; i < relabel.size(); ++i) os << (i ? "," : "") << relabel[i];
  os << "] seed=" << seed;
  return os.str();
}

namespace {

std::vector<std::uint64_t> parse_list(const std::string& s, const std::string& what) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item.find_first_not_of("0123456789") != std::string::npos) {
      throw PreconditionError("bad " + what + " entry '" + item + "'");
    }
    out.push_back(std::stoull(item));
  }
  return out;
}

}  // namespace

ScrambleSpec ScrambleSpec::parse(const std::string& text, std::uint64_t seed, std::size_t depth) {
  ScrambleSpec spec;
  spec.seed = seed;
  if (text.empty() || text == "identity") return spec;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw PreconditionError("spec item '" + item + "' lacks '='");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    if (key == "swap") {
      if (val == "all") {
        for (std::size_t i = 0; i < depth; ++i) spec.swapped.push_back(i);
      } else {
        for (auto v : parse_list(val, "swap")) spec.swapped.push_back(v);
      }
    } else if (key == "relabel") {
      for (auto v : parse_list(val, "relabel")) {
        if (v > 5) throw PreconditionError("relabel index " + std::to_string(v) + " is outside 0..5");
        spec.relabel.push_back(static_cast<RelabelChoice>(v));
      }
    } else {
      throw PreconditionError("unknown spec key '" + key + "'");
    }
  }
  std::sort(spec.swapped.begin(), spec.swapped.end());
  spec.swapped.erase(std::unique(spec.swapped.begin(), spec.swapped.end()), spec.swapped.end());
  return spec;
}

// ---------------------------------------------------------------------------
// Presentation

Presentation::Presentation(const Tower& tower, std::size_t level, bool scrambled,
                           ScrambleSpec spec, GeneratorImages sigma)
    : tower_(tower),
      level_(level),
      scrambled_(scrambled),
      spec_(std::move(spec)),
      sigma_(std::move(sigma)),
      enum_(tower, level),
      shuffle_rng_(spec_.seed) {
  sigma_identity_ = true;
  for (const auto& [i, v] : sigma_.x) sigma_identity_ = sigma_identity_ && v == tower.gen_x(i);
  for (const auto& [i, v] : sigma_.y) sigma_identity_ = sigma_identity_ && v == tower.gen_y(i);
  zero_code_ = enumerate(0);
  one_code_ = enumerate(1);
}

std::unique_ptr<Presentation> Presentation::canonical(const Tower& tower, std::size_t level) {
  if (level > tower.depth()) {
    throw PreconditionError("presentation level " + std::to_string(level) + " exceeds the depth");
  }
  GeneratorImages id;
  for (std::size_t i = 0; i < level; ++i) {
    id.x[i] = tower.gen_x(i);
    id.y[i] = tower.gen_y(i);
  }
  return std::unique_ptr<Presentation>(new Presentation(tower, level, false, {}, std::move(id)));
}

std::unique_ptr<Presentation> Presentation::scrambled(const Tower& tower, const ScrambleSpec& spec) {
  const std::size_t depth = tower.depth();
  for (auto s : spec.swapped) {
    if (s >= depth) throw PreconditionError("swapped level " + std::to_string(s) + " beyond depth");
  }
  if (spec.relabel.size() > depth) throw PreconditionError("more relabel entries than levels");
  GeneratorImages sigma;
  for (std::size_t i = 0; i < depth; ++i) {
    const RelabelChoice r = i < spec.relabel.size() ? spec.relabel[i] : 0;
    auto [a, b] = apply_relabeling(tower, r, tower.gen_x(i), tower.gen_y(i));
    if (std::find(spec.swapped.begin(), spec.swapped.end(), i) != spec.swapped.end()) {
      std::swap(a, b);
    }
    if (!tower.fermat_form(i, a, b).is_zero()) {
      throw InvariantViolation("scramble images at level " + std::to_string(i) +
                               " violate the Fermat relation");
    }
    sigma.x[i] = a;
    sigma.y[i] = b;
  }
  return std::unique_ptr<Presentation>(new Presentation(tower, depth, true, spec, std::move(sigma)));
}

TowerElem Presentation::next_enumerated() const {
  TowerElem e = enum_.next();
  if (sigma_identity_) return e;
  return tower_.coerce(tower_.substitute(e, sigma_), level_);
}

Code Presentation::assign(const TowerElem& v) const {
  if (slot_ == kBlock) {
    block_base_ = values_.size();
    values_.resize(block_base_ + kBlock);
    for (std::size_t i = 0; i < kBlock; ++i) perm_[i] = i;
    if (spec_.seed != 0) {
      for (std::size_t i = kBlock - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(shuffle_rng_() % (i + 1));
        std::swap(perm_[i], perm_[j]);
      }
    }
    slot_ = 0;
  }
  const Code c = block_base_ + perm_[slot_++];
  values_[c] = v;
  codes_.emplace(v, c);
  return c;
}

Code Presentation::intern(const TowerElem& v) const {
  if (auto it = codes_.find(v); it != codes_.end()) return it->second;
  return assign(v);
}

bool Presentation::assigned_below(std::size_t n) const {
  if (n > values_.size()) return false;
  for (std::size_t c = block_base_; c < n; ++c) {
    if (!values_[c]) return false;
  }
  return true;
}

void Presentation::realize(std::size_t n) const {
  std::lock_guard lock(mu_);
  while (!assigned_below(n)) enum_codes_.push_back(intern(next_enumerated()));
}

std::size_t Presentation::realized() const {
  std::lock_guard lock(mu_);
  std::size_t n = block_base_;
  while (n < values_.size() && values_[n]) ++n;
  return n;
}

Code Presentation::enumerate(std::size_t n) const {
  std::lock_guard lock(mu_);
  while (enum_codes_.size() <= n) enum_codes_.push_back(intern(next_enumerated()));
  return enum_codes_[n];
}

void Presentation::check_code(Code c) const {
  if (c >= values_.size() || !values_[c]) {
    throw PreconditionError("code " + std::to_string(c) + " has not been realized");
  }
}

TowerElem Presentation::value_of(Code c) const {
  check_code(c);
  return *values_[c];
}

Code Presentation::zero() const { return zero_code_; }
Code Presentation::one() const { return one_code_; }

Code Presentation::add(Code a, Code b) const {
  std::lock_guard lock(mu_);
  ++ops_;
  return intern(tower_.add(value_of(a), value_of(b)));
}

Code Presentation::sub(Code a, Code b) const {
  std::lock_guard lock(mu_);
  ++ops_;
  return intern(tower_.sub(value_of(a), value_of(b)));
}

Code Presentation::mul(Code a, Code b) const {
  std::lock_guard lock(mu_);
  ++ops_;
  return intern(tower_.mul(value_of(a), value_of(b)));
}

Code Presentation::neg(Code a) const {
  std::lock_guard lock(mu_);
  ++ops_;
  return intern(tower_.neg(value_of(a)));
}

Code Presentation::inv(Code a) const {
  std::lock_guard lock(mu_);
  ++ops_;
  const TowerElem v = value_of(a);
  if (v.is_zero()) throw DivisionByZero("inverse of the zero code");
  return intern(tower_.inv(v));
}

Code Presentation::pow(Code a, std::uint64_t n) const {
  Code result = one();
  Code base = a;
  while (n > 0) {
    if (n & 1U) result = mul(result, base);
    n >>= 1U;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

bool Presentation::eq(Code a, Code b) const {
  std::lock_guard lock(mu_);
  check_code(a);
  check_code(b);
  return a == b;
}

std::uint64_t Presentation::op_count() const {
  std::lock_guard lock(mu_);
  return ops_;
}

TowerElem Presentation::element(Code c) const {
  if (scrambled_) throw PreconditionError("element() is not offered on a scrambled presentation");
  std::lock_guard lock(mu_);
  return value_of(c);
}

Code Presentation::encode(const TowerElem& a) const {
  if (scrambled_) throw PreconditionError("encode() is not offered on a scrambled presentation");
  if (a.level() > level_) throw PreconditionError("element lies above the presentation level");
  std::lock_guard lock(mu_);
  return intern(tower_.coerce(a, level_));
}

GroundTruth ground_truth_iso(const Presentation& p) {
  if (!p.scrambled_) throw PreconditionError("canonical presentations carry no hidden isomorphism");
  return GroundTruth{p.sigma_, &p};
}

Code GroundTruth::image_code(const TowerElem& a) const {
  const Presentation& p = *target;
  std::lock_guard lock(p.mu_);
  return p.intern(p.tower_.coerce(p.tower_.substitute(a, sigma), p.level_));
}

TowerElem GroundTruth::value(Code c) const {
  std::lock_guard lock(target->mu_);
  return target->value_of(c);
}

std::string table_dump(const Presentation& p, std::size_t n) {
  if (n == 0) throw PreconditionError("table size must be at least 1");
  p.realize(n);
  std::ostringstream os;
  os << "# table-dump\n";
  os << "kind: " << (p.is_scrambled() ? "scrambled" : "canonical") << "\n";
  os << "primes: [";
  for (std::size_t i = 0; i < p.tower().depth(); ++i) os << (i ? "," : "") << p.tower().prime(i);
  os << "]\n";
  os << "level: " << p.level() << "\n";
  os << "spec: " << p.spec().describe() << "\n";
  os << "seed: " << p.spec().seed << "\n";
  os << "n: " << n << "\n";
  os << "zero: " << p.zero() << "\none: " << p.one() << "\n";
  for (const char* name : {"add", "mul"}) {
    os << name << "\n";
    for (Code a = 0; a < n; ++a) {
      for (Code b = 0; b < n; ++b) {
        os << (b ? " " : "") << (name[0] == 'a' ? p.add(a, b) : p.mul(a, b));
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace fermat
