#include "sievekit/report.hpp"

#include <sstream>

namespace sievekit {

Witness object_witness(std::string role, std::string name) {
  return {std::move(role), Witness::Kind::object, {std::move(name)}, {}};
}

Witness morphism_witness(std::string role, std::string name) {
  return {std::move(role), Witness::Kind::morphism, {std::move(name)}, {}};
}

Witness element_witness(std::string role, std::string name) {
  return {std::move(role), Witness::Kind::element, {std::move(name)}, {}};
}

namespace {

void write_list(std::ostream& os, const std::vector<std::string>& names) {
  os << '{';
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
  os << '}';
}

}  // namespace

std::string describe(const Violation& v) {
  std::ostringstream os;
  os << v.law;
  if (!v.object.empty()) os << " at " << v.object;
  if (!v.witnesses.empty()) os << ':';
  for (const auto& w : v.witnesses) {
    os << ' ' << w.role << '=';
    switch (w.kind) {
      case Witness::Kind::sieve:
        write_list(os, w.names);
        break;
      case Witness::Kind::family:
        os << '[';
        for (std::size_t i = 0; i < w.sieves.size(); ++i) {
          if (i) os << ',';
          write_list(os, w.sieves[i]);
        }
        os << ']';
        break;
      default:
        os << (w.names.empty() ? std::string{} : w.names.front());
        for (std::size_t i = 1; i < w.names.size(); ++i) os << ',' << w.names[i];
    }
  }
  if (!v.detail.empty()) os << " (" << v.detail << ')';
  return os.str();
}

}  // namespace sievekit
