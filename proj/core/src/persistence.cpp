#include "netpers/persistence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "netpers/error.hpp"
#include "netpers/graph.hpp"

namespace netpers {

Diagram::Diagram(std::vector<Cornerpoint> points) {
  for (const Cornerpoint& p : points) {
    if (std::isnan(p.birth) || std::isnan(p.death) || std::isinf(p.birth))
      throw InvalidInput("cornerpoint coordinates must be numbers with a finite birth");
    if (!(p.birth < p.death)) throw InvalidInput("cornerpoint needs birth < death");
    if (p.multiplicity < 1) throw InvalidInput("cornerpoint multiplicity must be positive");
  }
  std::sort(points.begin(), points.end(), [](const Cornerpoint& a, const Cornerpoint& b) {
    return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
  });
  for (const Cornerpoint& p : points) {
    if (!points_.empty() && points_.back().birth == p.birth && points_.back().death == p.death) {
      points_.back().multiplicity += p.multiplicity;
    } else {
      points_.push_back(p);
    }
  }
}

int Diagram::infinite_count() const {
  int n = 0;
  for (const auto& p : points_) n += p.at_infinity() ? p.multiplicity : 0;
  return n;
}

int Diagram::finite_count() const {
  int n = 0;
  for (const auto& p : points_) n += p.at_infinity() ? 0 : p.multiplicity;
  return n;
}

std::vector<Cornerpoint> Diagram::expanded_finite() const {
  std::vector<Cornerpoint> out;
  for (const auto& p : points_) {
    if (p.at_infinity()) continue;
    for (int i = 0; i < p.multiplicity; ++i) out.push_back({p.birth, p.death, 1});
  }
  return out;
}

std::vector<double> Diagram::expanded_infinite_births() const {
  std::vector<double> out;
  for (const auto& p : points_) {
    if (!p.at_infinity()) continue;
    for (int i = 0; i < p.multiplicity; ++i) out.push_back(p.birth);
  }
  return out;
}

std::string format_diagram(const Diagram& d) {
  std::string out;
  for (const auto& p : d.points()) {
    out += format_number(p.birth) + " " + format_number(p.death) + " " + std::to_string(p.multiplicity) + "\n";
  }
  return out;
}

namespace {

bool parse_real(const std::string& token, double& out) {
  if (token == "inf" || token == "+inf") {
    out = kInfinity;
    return true;
  }
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

Diagram parse_diagram(std::istream& in) {
  std::vector<Cornerpoint> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    Cornerpoint p;
    int mult = 0;
    if (tokens.size() != 3 || !parse_real(tokens[0], p.birth) || !parse_real(tokens[1], p.death))
      throw ParseError(line_no, "expected 'birth death multiplicity'");
    auto [ptr, ec] = std::from_chars(tokens[2].data(), tokens[2].data() + tokens[2].size(), mult);
    if (ec != std::errc() || ptr != tokens[2].data() + tokens[2].size())
      throw ParseError(line_no, "multiplicity must be an integer");
    if (std::isinf(p.birth)) throw ParseError(line_no, "birth must be finite");
    if (!(p.birth < p.death)) throw ParseError(line_no, "birth must be smaller than death");
    if (mult < 1) throw ParseError(line_no, "multiplicity must be positive");
    p.multiplicity = mult;
    points.push_back(p);
  }
  return Diagram(std::move(points));
}

Diagram parse_diagram(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_diagram(in);
}

// ---------------------------------------------------------------------------

PersistenceFunction::PersistenceFunction(std::vector<double> criticals)
    : criticals_(std::move(criticals)), table_(criticals_.size() * (criticals_.size() + 1), 0) {
  for (std::size_t i = 1; i < criticals_.size(); ++i) {
    if (!(criticals_[i - 1] < criticals_[i])) throw InvalidInput("critical values must be strictly increasing");
  }
}

int PersistenceFunction::value(double u, double v) const {
  if (u > v) throw InvalidInput("persistence function needs u <= v");
  auto index = [this](double x) {
    return static_cast<std::ptrdiff_t>(std::upper_bound(criticals_.begin(), criticals_.end(), x) - criticals_.begin()) - 1;
  };
  const std::ptrdiff_t iu = index(u);
  if (iu < 0) return 0;
  if (v == kInfinity) return at(static_cast<std::size_t>(iu), infinity_column());
  return at(static_cast<std::size_t>(iu), static_cast<std::size_t>(index(v)));
}

namespace {

// p with the virtual row i = -1 of zeros.
int grid(const PersistenceFunction& pf, std::ptrdiff_t i, std::size_t j) {
  return i < 0 ? 0 : pf.at(static_cast<std::size_t>(i), j);
}

std::string label(const PersistenceFunction& pf, std::ptrdiff_t i) {
  if (i < 0) return "-inf";
  if (static_cast<std::size_t>(i) == pf.size()) return "inf";
  return format_number(pf.criticals()[static_cast<std::size_t>(i)]);
}

std::string cell(const PersistenceFunction& pf, std::ptrdiff_t i, std::size_t j) {
  return "p(" + label(pf, i) + "," + label(pf, static_cast<std::ptrdiff_t>(j)) + ")=" +
         std::to_string(grid(pf, i, j));
}

}  // namespace

// Adjacent-cell checks imply the quadruple inequalities: monotonicity is
// transitive and every rectangle difference is a sum of unit cells.
std::optional<AxiomViolation> check_axioms(const PersistenceFunction& pf) {
  const std::size_t m = pf.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j <= m; ++j) {
      if (pf.at(i, j) < 0) return AxiomViolation{"nonnegativity", cell(pf, i, j) + " < 0"};
    }
  }
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    for (std::size_t j = static_cast<std::size_t>(i); j <= m; ++j) {
      if (grid(pf, i - 1, j) > grid(pf, i, j)) {
        return AxiomViolation{"monotone-first", cell(pf, i - 1, j) + " > " + cell(pf, i, j)};
      }
      if (j < m && grid(pf, i, j + 1) > grid(pf, i, j)) {
        return AxiomViolation{"monotone-second", cell(pf, i, j + 1) + " > " + cell(pf, i, j)};
      }
      if (j < m) {
        const int left = grid(pf, i, j) - grid(pf, i - 1, j);
        const int right = grid(pf, i, j + 1) - grid(pf, i - 1, j + 1);
        if (left < right) {
          return AxiomViolation{"superadditivity", cell(pf, i, j) + " - " + cell(pf, i - 1, j) + " < " +
                                                       cell(pf, i, j + 1) + " - " + cell(pf, i - 1, j + 1)};
        }
      }
    }
  }
  return std::nullopt;
}

Diagram extract_diagram(const PersistenceFunction& pf) {
  const std::size_t m = pf.size();
  const auto c = pf.criticals();
  std::vector<Cornerpoint> points;
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    for (std::size_t j = ui + 1; j < m; ++j) {
      const int mu = grid(pf, i, j - 1) - grid(pf, i - 1, j - 1) - grid(pf, i, j) + grid(pf, i - 1, j);
      if (mu < 0) {
        throw AxiomError("negative multiplicity " + std::to_string(mu) + " at (" + format_number(c[ui]) + ", " +
                         format_number(c[j]) + ")");
      }
      if (mu > 0) points.push_back({c[ui], c[j], mu});
    }
    const int mu_inf = grid(pf, i, m) - grid(pf, i - 1, m);
    if (mu_inf < 0) {
      throw AxiomError("negative multiplicity " + std::to_string(mu_inf) + " at (" + format_number(c[ui]) + ", inf)");
    }
    if (mu_inf > 0) points.push_back({c[ui], kInfinity, mu_inf});
  }
  return Diagram(std::move(points));
}

int evaluate(const Diagram& d, double beta, double gamma) {
  if (beta > gamma) throw InvalidInput("evaluate needs beta <= gamma");
  for (const auto& p : d.points()) {
    if (beta == p.birth || gamma == p.birth || (!p.at_infinity() && (beta == p.death || gamma == p.death))) {
      throw InvalidInput("(" + format_number(beta) + ", " + format_number(gamma) + ") is a discontinuity point");
    }
  }
  int total = 0;
  for (const auto& p : d.points()) {
    if (p.birth < beta && p.death > gamma) total += p.multiplicity;
  }
  return total;
}

}  // namespace netpers
