#include "plsat/dimacs.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace plsat {

void write_dimacs(const Formula& f, std::ostream& out) {
  if (f.prov.present) {
    out << "c plsat generator " << f.prov.generator << '\n';
    out << "c plsat model " << f.prov.model << '\n';
    out << "c plsat seed " << f.prov.seed << '\n';
  }
  out << "p cnf " << f.n << ' ' << f.m() << '\n';
  for (const Clause& c : f.clauses) {
    for (Lit l : c.lits) out << l.v << ' ';
    out << "0\n";
  }
}

Formula read_dimacs(std::istream& in, std::size_t strict_k) {
  Formula f;
  std::string line;
  bool header_seen = false;
  std::size_t declared_m = 0;
  std::size_t lineno = 0;

  auto fail = [&](const std::string& what) {
    throw std::runtime_error("dimacs line " + std::to_string(lineno) + ": " +
                             what);
  };

  Clause cur;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == 'c') {
      std::istringstream ls(line);
      std::string c, tag, key;
      ls >> c >> tag >> key;
      if (tag == "plsat") {
        f.prov.present = true;
        std::string rest;
        std::getline(ls, rest);
        if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
        if (key == "generator") f.prov.generator = rest;
        else if (key == "model") f.prov.model = rest;
        else if (key == "seed") f.prov.seed = std::stoull(rest);
      }
      continue;
    }
    if (line[0] == 'p') {
      std::istringstream ls(line);
      std::string p, fmt;
      long long n = -1, m = -1;
      if (!(ls >> p >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0)
        fail("bad problem line (want 'p cnf <n> <m>')");
      f.n = std::size_t(n);
      declared_m = std::size_t(m);
      header_seen = true;
      continue;
    }
    if (!header_seen) fail("clause data before 'p cnf' header");

    std::istringstream ls(line);
    long long x;
    while (ls >> x) {
      if (x == 0) {
        if (cur.lits.empty()) fail("empty clause");
        try {
          canonicalize(cur);
        } catch (const std::invalid_argument& e) {
          fail(e.what());
        }
        if (strict_k && cur.size() != strict_k)
          fail("clause width " + std::to_string(cur.size()) +
               " != required k=" + std::to_string(strict_k));
        f.clauses.push_back(std::move(cur));
        cur = Clause{};
      } else {
        long long v = x < 0 ? -x : x;
        if (std::size_t(v) > f.n)
          fail("literal " + std::to_string(x) + " exceeds n=" +
               std::to_string(f.n));
        cur.lits.push_back({int32_t(x)});
      }
    }
  }
  if (!header_seen) throw std::runtime_error("dimacs: missing 'p cnf' header");
  if (!cur.lits.empty())
    throw std::runtime_error("dimacs: unterminated final clause");
  if (declared_m != f.m())
    throw std::runtime_error("dimacs: header declares " +
                             std::to_string(declared_m) + " clauses, found " +
                             std::to_string(f.m()));
  if (!f.clauses.empty()) {
    std::size_t k = f.clauses.front().size();
    bool same = true;
    for (const Clause& c : f.clauses)
      if (c.size() != k) { same = false; break; }
    f.k = same ? k : 0;
  }
  return f;
}

void write_dimacs_file(const Formula& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_dimacs(f, out);
}

Formula read_dimacs_file(const std::string& path, std::size_t strict_k) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_dimacs(in, strict_k);
}

}  // namespace plsat
