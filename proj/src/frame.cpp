#include "sievekit/frame.hpp"

#include <algorithm>

#include "sievekit/convergence.hpp"
#include "sievekit/errors.hpp"

namespace sievekit {

namespace {

// Least element of `candidates` under `below`, if one exists.
template <typename Below>
std::optional<std::size_t> least(const std::vector<std::size_t>& candidates, Below below) {
  for (auto c : candidates) {
    if (std::all_of(candidates.begin(), candidates.end(), [&](std::size_t d) { return below(c, d); })) return c;
  }
  return std::nullopt;
}

}  // namespace

Frame Frame::from_poset(std::span<const std::string> elements,
                        std::span<const std::pair<std::string, std::string>> order) {
  Frame f(sievekit::from_poset(elements, order));
  const auto& cat = f.category_;
  const auto n = cat.object_count();
  for (auto o : cat.object_ids()) f.names_.push_back(cat.object_name(o));
  if (n == 0) throw ValidationError("empty poset is not a lattice", Report{{{"lattice", {}, {}, "no elements"}}});

  f.leq_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) f.leq_[a * n + b] = cat.hom(object_at(a), object_at(b)).empty() ? 0 : 1;
  auto le = [&](std::size_t a, std::size_t b) { return f.leq_[a * n + b] != 0; };

  f.join_.assign(n * n, Element{});
  f.meet_.assign(n * n, Element{});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<std::size_t> upper, lower;
      for (std::size_t x = 0; x < n; ++x) {
        if (le(a, x) && le(b, x)) upper.push_back(x);
        if (le(x, a) && le(x, b)) lower.push_back(x);
      }
      const auto j = least(upper, le);
      const auto m = least(lower, [&](std::size_t x, std::size_t y) { return le(y, x); });
      if (!j || !m) {
        Violation v{"lattice",
                    {},
                    {element_witness("a", f.names_[a]), element_witness("b", f.names_[b])},
                    j ? "no meet" : "no join"};
        throw ValidationError("not a lattice: " + describe(v), Report{{v}});
      }
      f.join_[a * n + b] = element_at(*j);
      f.meet_[a * n + b] = element_at(*m);
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    bool is_top = true, is_bottom = true;
    for (std::size_t y = 0; y < n; ++y) {
      is_top = is_top && le(y, x);
      is_bottom = is_bottom && le(x, y);
    }
    if (is_top) f.top_ = element_at(x);
    if (is_bottom) f.bottom_ = element_at(x);
  }

  for (auto a : f.elements()) {
    for (auto b : f.elements()) {
      for (auto c : f.elements()) {
        if (f.meet(a, f.join(b, c)) != f.join(f.meet(a, b), f.meet(a, c))) {
          Violation v{"distributivity",
                      {},
                      {element_witness("a", f.name(a)), element_witness("b", f.name(b)),
                       element_witness("c", f.name(c))},
                      "a & (b | c) != (a & b) | (a & c)"};
          throw ValidationError("not distributive: " + describe(v), Report{{v}});
        }
      }
    }
  }

  f.implies_.assign(n * n, Element{});
  for (auto a : f.elements()) {
    for (auto b : f.elements()) {
      std::vector<Element> below;
      for (auto x : f.elements())
        if (f.leq(f.meet(x, a), b)) below.push_back(x);
      const auto imp = f.join_all(below);
      f.implies_[index(a) * n + index(b)] = imp;
      for (auto x : f.elements()) {
        if (f.leq(x, imp) != f.leq(f.meet(x, a), b)) {
          throw InternalInconsistency("implication adjunction fails in a distributive lattice");
        }
      }
    }
  }
  return f;
}

Element Frame::element(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) throw UnknownName("unknown element '" + std::string(name) + "'");
  return element_at(static_cast<std::size_t>(it - names_.begin()));
}

std::vector<Element> Frame::elements() const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(element_at(i));
  return out;
}

Element Frame::join_all(std::span<const Element> family) const {
  Element acc = bottom_;
  for (auto e : family) acc = join(acc, e);
  return acc;
}

bool base_covers(const Frame& frame, Element c, std::span<const Element> family) {
  for (auto a : family) {
    if (!frame.leq(a, c)) {
      throw PreconditionViolation("'" + frame.name(a) + "' is not below '" + frame.name(c) + "'");
    }
  }
  return frame.join_all(family) == c;
}

bool sieve_covers(const Frame& frame, Element c, const Sieve& s) {
  const auto& cat = frame.category();
  if (s.codomain() != frame.object(c)) {
    throw CodomainMismatch("sieve on " + cat.object_name(s.codomain()) + " is not a sieve on " + frame.name(c));
  }
  std::vector<Element> sources;
  s.members().for_each([&](MorphismId m) { sources.push_back(frame.element_of(cat.dom(m))); });
  return frame.join_all(sources) == c;
}

GrothendieckTopology canonical_topology(const Frame& frame) {
  const auto& cat = frame.category();
  GrothendieckTopology j;
  for (auto c : frame.elements()) {
    SieveFamily covering;
    for (const auto& s : enumerate_sieves(cat, frame.object(c))) {
      if (sieve_covers(frame, c, s)) covering.push_back(s);
    }
    j.covering.push_back(std::move(covering));
  }
  if (auto r = validate_topology(cat, j, TopologyLevel::full); !r.ok()) {
    throw InternalInconsistency("canonical frame topology fails validation: " + describe(r.violations.front()));
  }
  return j;
}

bool frame_cover_converges(const Frame& frame, const Filter& f, Element c) {
  const auto& family = f.at(frame.object(c));
  return std::all_of(family.begin(), family.end(), [&](const Sieve& s) { return sieve_covers(frame, c, s); });
}

ConvergenceComparison compare_convergence_at_top(const Frame& frame, const Filter& f) {
  const auto& cat = frame.category();
  const auto top = frame.top();
  const auto j = canonical_topology(frame);
  const auto pts = points(cat, frame.object(top));
  return {frame_cover_converges(frame, f, top),
          std::all_of(pts.begin(), pts.end(), [&](const Point& p) { return converges(cat, j, f, p); })};
}

}  // namespace sievekit
