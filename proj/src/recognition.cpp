#include "monoidw/recognition.hpp"

#include <algorithm>
#include <span>
#include <unordered_map>
#include <unordered_set>

#include "monoidw/kernels.hpp"

namespace monoidw {
namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<Elem>& v) const noexcept {
    std::size_t h = v.size();
    for (Elem x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

constexpr std::size_t kCheckLength = 8;
constexpr std::size_t kCheckBudget = 200'000;

}  // namespace

TransformationMonoid transformation_monoid(std::size_t degree,
                                           const std::vector<std::vector<Elem>>& generators,
                                           std::size_t cap) {
  for (const auto& g : generators) {
    if (g.size() != degree) throw Error(ErrorKind::IndexOutOfRange, "generator has wrong degree");
    for (Elem x : g) {
      if (x >= degree) throw Error(ErrorKind::IndexOutOfRange, "generator maps out of range");
    }
  }
  const auto& kernels = kernels::active();
  const std::size_t k = generators.size();

  std::vector<std::vector<Elem>> elements;
  std::unordered_map<std::vector<Elem>, Elem, VectorHash> ids;
  std::vector<Elem> parent, letter;  // spanning tree of the right Cayley graph
  std::vector<Elem> right;           // right[x * k + a] = x * gen(a)

  std::vector<Elem> identity(degree);
  for (std::size_t q = 0; q < degree; ++q) identity[q] = static_cast<Elem>(q);
  ids.emplace(identity, 0);
  elements.push_back(std::move(identity));
  parent.push_back(kNoElem);
  letter.push_back(kNoElem);

  std::vector<Elem> scratch(degree);
  for (std::size_t x = 0; x < elements.size(); ++x) {
    for (std::size_t a = 0; a < k; ++a) {
      kernels.compose(elements[x].data(), generators[a].data(), scratch.data(), degree);
      auto [it, inserted] = ids.emplace(scratch, static_cast<Elem>(elements.size()));
      if (inserted) {
        if (elements.size() >= cap) {
          throw Error(ErrorKind::SizeGuardExceeded,
                      "transformation monoid exceeds " + std::to_string(cap) + " elements");
        }
        elements.push_back(scratch);
        parent.push_back(static_cast<Elem>(x));
        letter.push_back(static_cast<Elem>(a));
      }
      right.push_back(it->second);
    }
  }

  // Every non-identity y is parent(y) * gen(letter(y)) with parent(y) < y,
  // so x * y = (x * parent(y)) * gen(letter(y)) fills each row in order.
  const std::size_t n = elements.size();
  std::vector<Elem> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    Elem* row = table.data() + x * n;
    row[0] = static_cast<Elem>(x);
    for (std::size_t y = 1; y < n; ++y) row[y] = right[std::size_t{row[parent[y]]} * k + letter[y]];
  }

  std::vector<Elem> images;
  for (const auto& g : generators) images.push_back(ids.at(g));
  return TransformationMonoid{FiniteMonoid::validate(n, std::move(table), 0), std::move(elements),
                              std::move(images)};
}

Elem RecognitionData::evaluate(std::string_view word) const {
  Elem x = monoid.identity();
  for (char c : word) {
    const auto s = alphabet.find(c);
    if (s == std::string::npos) {
      throw Error(ErrorKind::AlphabetMismatch, std::string("symbol '") + c + "' not in alphabet");
    }
    x = monoid(x, letter_images[s]);
  }
  return x;
}

bool RecognitionData::accepts(std::string_view word) const {
  return std::binary_search(accepting.begin(), accepting.end(), evaluate(word));
}

RecognitionData transition_monoid(const Dfa& d, std::size_t cap) {
  const std::size_t k = d.alphabet().size();
  std::vector<std::vector<Elem>> generators(k, std::vector<Elem>(d.state_count()));
  for (Dfa::State q = 0; q < d.state_count(); ++q) {
    for (std::size_t a = 0; a < k; ++a) generators[a][q] = d.next(q, a);
  }
  auto tm = transformation_monoid(d.state_count(), generators, cap);
  RecognitionData data{std::move(tm.monoid), d.alphabet(), std::move(tm.generator_images), {}};
  for (Elem x = 0; x < data.monoid.size(); ++x) {
    if (d.is_final(tm.transformations[x][d.initial()])) data.accepting.push_back(x);
  }

  // Cross-check phi^-1(accepting) against the automaton on short words.
  std::size_t budget = kCheckBudget;
  struct Frame {
    Dfa::State q;
    Elem x;
    std::size_t depth;
  };
  std::vector<Frame> stack{{d.initial(), data.monoid.identity(), 0}};
  while (!stack.empty() && budget > 0) {
    const Frame f = stack.back();
    stack.pop_back();
    --budget;
    const bool in_monoid = std::binary_search(data.accepting.begin(), data.accepting.end(), f.x);
    if (in_monoid != d.is_final(f.q)) {
      throw Error(ErrorKind::MorphismViolation, "transition monoid disagrees with the automaton");
    }
    if (f.depth == kCheckLength) continue;
    for (std::size_t a = 0; a < k; ++a) {
      stack.push_back({d.next(f.q, a), data.monoid(f.x, data.letter_images[a]), f.depth + 1});
    }
  }
  return data;
}

RecognitionData syntactic_monoid(const Dfa& d, std::size_t cap) {
  return transition_monoid(minimize(d), cap);
}

namespace {

std::size_t image_size(std::span<const Elem> t, std::vector<char>& mark) {
  std::fill(mark.begin(), mark.end(), 0);
  std::size_t count = 0;
  for (Elem q : t) {
    if (!mark[q]) {
      mark[q] = 1;
      ++count;
    }
  }
  return count;
}

}  // namespace

bool transition_subgroups_satisfy(const Dfa& d, Variety h, std::size_t cap) {
  if (h == Variety::AllGroups) return true;
  const std::size_t deg = d.state_count();
  const std::size_t k = d.alphabet().size();
  const auto& kernels = kernels::active();

  // Elements live in one flat buffer; the set holds their indices.
  std::vector<Elem> flat(deg);
  for (std::size_t q = 0; q < deg; ++q) flat[q] = static_cast<Elem>(q);
  auto at = [&](std::size_t i) { return std::span<const Elem>(flat.data() + i * deg, deg); };
  auto hash = [&](std::size_t i) {
    std::size_t v = deg;
    for (Elem x : at(i)) v ^= x + 0x9e3779b97f4a7c15ULL + (v << 6) + (v >> 2);
    return v;
  };
  auto equal = [&](std::size_t i, std::size_t j) { return std::ranges::equal(at(i), at(j)); };
  std::unordered_set<std::size_t, decltype(hash), decltype(equal)> seen(64, hash, equal);
  seen.insert(0);

  std::vector<Elem> generators(k * deg);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t q = 0; q < deg; ++q) generators[a * deg + q] = d.next(static_cast<Dfa::State>(q), a);

  std::size_t count = 1;
  for (std::size_t x = 0; x < count; ++x) {
    for (std::size_t a = 0; a < k; ++a) {
      flat.resize((count + 1) * deg);  // candidate slot
      kernels.compose(flat.data() + x * deg, generators.data() + a * deg, flat.data() + count * deg, deg);
      if (seen.insert(count).second) {
        if (++count > cap) {
          throw Error(ErrorKind::SizeGuardExceeded, "transformation monoid exceeds " + std::to_string(cap) + " elements");
        }
      }
    }
  }
  flat.resize(count * deg);

  // Group elements keyed by their idempotent power.
  std::vector<char> mark(deg);
  std::vector<Elem> square(deg), power(deg), next(deg);
  std::unordered_map<std::vector<Elem>, std::vector<std::size_t>, VectorHash> groups;
  for (std::size_t x = 0; x < count; ++x) {
    const auto t = at(x);
    kernels.compose(t.data(), t.data(), square.data(), deg);
    if (image_size(square, mark) != image_size(t, mark)) continue;
    if (h == Variety::Trivial) {
      if (!std::ranges::equal(square, t)) return false;
      continue;
    }
    power.assign(t.begin(), t.end());
    for (;;) {
      kernels.compose(power.data(), power.data(), next.data(), deg);
      if (next == power) break;
      kernels.compose(power.data(), t.data(), next.data(), deg);
      power.swap(next);
    }
    groups[power].push_back(x);
  }
  for (const auto& [e, members] : groups) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        kernels.compose(at(members[i]).data(), at(members[j]).data(), square.data(), deg);
        kernels.compose(at(members[j]).data(), at(members[i]).data(), next.data(), deg);
        if (square != next) return false;
      }
    }
  }
  return true;
}

}  // namespace monoidw
