#include <fstream>
#include <sstream>

#include "ff/caps.hpp"
#include "ff/group.hpp"

namespace ff {

namespace {

Group from_cycles(int degree, const std::vector<std::string>& gens) {
  std::vector<Perm> ps;
  ps.reserve(gens.size());
  for (const auto& s : gens) ps.push_back(parse_cycles(degree, s));
  return closure(degree, std::move(ps));
}

Group cyclic(int n) {
  Perm c(n);
  for (int i = 0; i < n; ++i) c[i] = static_cast<std::uint16_t>((i + 1) % n);
  return closure(n, {c});
}

Group symmetric(int n) {
  std::vector<int> full(n);
  for (int i = 0; i < n; ++i) full[i] = i;
  Perm cyc(n);
  for (int i = 0; i < n; ++i) cyc[i] = static_cast<std::uint16_t>((i + 1) % n);
  return closure(n, {parse_cycles(n, "(0 1)"), cyc});
}

Group alternating(int n) {
  // For odd n the full n-cycle is even; for even n rotate points 1..n-1.
  Perm cyc = identity_perm(n);
  if (n % 2 == 1) {
    for (int i = 0; i < n; ++i) cyc[i] = static_cast<std::uint16_t>((i + 1) % n);
  } else {
    for (int i = 1; i < n; ++i) cyc[i] = static_cast<std::uint16_t>(i % (n - 1) + 1);
  }
  return closure(n, {parse_cycles(n, "(0 1 2)"), cyc});
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"A4", "A5", "A6", "C2", "C3", "C4",   "C5",   "C6",   "C7",  "C8", "D8",
          "GL23", "Q8", "S3", "S4", "S5", "SD16", "SL23", "SL32", "V4"};
}

Group catalog_group(const std::string& name) {
  if (name.size() == 2 && name[0] == 'C' && name[1] >= '2' && name[1] <= '8')
    return cyclic(name[1] - '0');
  if (name == "V4") return from_cycles(4, {"(0 1)(2 3)", "(0 2)(1 3)"});
  if (name == "S3") return symmetric(3);
  if (name == "S4") return symmetric(4);
  if (name == "S5") return symmetric(5);
  if (name == "A4") return alternating(4);
  if (name == "A5") return alternating(5);
  if (name == "A6") return alternating(6);
  if (name == "D8") return from_cycles(4, {"(0 1 2 3)", "(0 2)"});
  // Q8 in its left regular representation on 1, -1, i, -i, j, -j, k, -k.
  if (name == "Q8")
    return from_cycles(8, {"(0 2 1 3)(4 6 5 7)", "(0 4 1 5)(2 7 3 6)"});
  if (name == "SD16")
    return from_cycles(8, {"(0 1 2 3 4 5 6 7)", "(1 3)(2 6)(5 7)"});
  // SL(2,3) and GL(2,3) acting on the eight nonzero vectors of F_3^2,
  // numbered (0,1) (0,2) (1,0) (1,1) (1,2) (2,0) (2,1) (2,2).
  if (name == "SL23")
    return from_cycles(8, {"(0 3 6)(1 7 4)", "(0 5 1 2)(3 6 7 4)"});
  if (name == "GL23")
    return from_cycles(
        8, {"(0 3 6)(1 7 4)", "(0 5 1 2)(3 6 7 4)", "(2 5)(3 6)(4 7)"});
  // SL(3,2) on the seven nonzero vectors of F_2^3, numbered
  // (0,0,1) (0,1,0) (0,1,1) (1,0,0) (1,0,1) (1,1,0) (1,1,1).
  if (name == "SL32")
    return from_cycles(7, {"(1 5)(2 6)", "(0 3 1)(2 4 5)"});
  throw ParseError("unknown catalog group: " + name);
}

Group parse_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open group file: " + path);
  int degree = -1;
  std::vector<Perm> gens;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    if (degree < 0) {
      std::istringstream hdr(line);
      std::string word;
      if (!(hdr >> word) || word != "degree" || !(hdr >> degree) || degree < 1 ||
          degree > 60000)
        throw ParseError("group file must start with 'degree <n>': " + path);
      continue;
    }
    gens.push_back(parse_cycles(degree, line));
  }
  if (degree < 0) throw ParseError("group file has no degree header: " + path);
  return closure(degree, std::move(gens));
}

Group resolve_group(const std::string& spec) {
  for (const std::string& name : catalog_names())
    if (spec == name) return catalog_group(name);
  if (std::ifstream probe(spec); probe) return parse_group_file(spec);
  // AxB (xC...) products of resolvable specs.  Splitting at the first 'x' is
  // fine: point-set concatenation makes the product associative.
  std::size_t x = spec.find('x');
  if (x != std::string::npos && x > 0 && x + 1 < spec.size()) {
    Group left = resolve_group(spec.substr(0, x));
    Group right = resolve_group(spec.substr(x + 1));
    return direct_product(left, right);
  }
  throw ParseError("cannot resolve group spec (not a catalog name, file, or AxB product): " +
                   spec);
}

}  // namespace ff
