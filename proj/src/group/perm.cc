#include "ff/perm.hpp"

#include <numeric>
#include <sstream>

#include "ff/caps.hpp"

namespace ff {

Perm identity_perm(int degree) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

Perm inverse(const Perm& p) {
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<std::uint16_t>(i);
  return out;
}

Perm conjugate(const Perm& g, const Perm& x) {
  // g x g^-1 maps g(i) to g(x(i)).
  Perm out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[g[i]] = g[x[i]];
  return out;
}

int perm_order(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  long long ord = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = p[j];
      ++len;
    }
    ord = std::lcm(ord, static_cast<long long>(len));
  }
  return static_cast<int>(ord);
}

int perm_sign(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = p[j];
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

Perm parse_cycles(int degree, const std::string& text) {
  Perm p = identity_perm(degree);
  std::size_t i = 0;
  bool any = false;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c != '(') throw ParseError("expected '(' in cycle expression: " + text);
    std::size_t close = text.find(')', i);
    if (close == std::string::npos)
      throw ParseError("unbalanced '(' in cycle expression: " + text);
    std::string body = text.substr(i + 1, close - i - 1);
    for (char& ch : body)
      if (ch == ',') ch = ' ';
    std::istringstream in(body);
    std::vector<int> cycle;
    int point = 0;
    while (in >> point) {
      if (point < 0 || point >= degree)
        throw ParseError("cycle point out of range: " + std::to_string(point));
      cycle.push_back(point);
    }
    if (!in.eof()) throw ParseError("bad cycle contents: " + body);
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      int from = cycle[k];
      int to = cycle[(k + 1) % cycle.size()];
      if (p[from] != from)
        throw ParseError("point repeated across cycles: " + std::to_string(from));
      if (!cycle.empty() && cycle.size() > 1) p[from] = static_cast<std::uint16_t>(to);
    }
    any = true;
    i = close + 1;
  }
  if (!any) throw ParseError("empty cycle expression");
  return p;
}

std::string cycle_string(const Perm& p) {
  std::ostringstream out;
  std::vector<bool> seen(p.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out << '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out << ' ';
      out << j;
      first = false;
      j = p[j];
    }
    out << ')';
    any = true;
  }
  if (!any) return "()";
  return out.str();
}

}  // namespace ff
