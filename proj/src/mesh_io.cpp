#include <cstdio>
#include <fstream>
#include <sstream>

#include "wg/mesh.hpp"

namespace wg {

namespace {

// Reads the next content line, stripping '#' comments and blanks.
bool next_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto pos = line.find_first_not_of(" \t\r\n");
    if (pos == std::string::npos) continue;
    return true;
  }
  return false;
}

[[noreturn]] void fail(int lineno, const std::string& what) {
  throw ParseError("mesh parse error at line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

Mesh parse_mesh(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!next_line(in, line, lineno)) throw ParseError("mesh parse error: empty file");

  std::istringstream hdr(line);
  std::string magic;
  int dim = 0, nv = 0, nt = 0;
  hdr >> magic >> dim >> nv >> nt;
  if (hdr.fail() || magic != "polymesh") fail(lineno, "expected header 'polymesh 2 <nv> <nt>'");
  if (dim != 2) fail(lineno, "only dimension 2 is supported");
  if (nv < 3 || nt < 1) fail(lineno, "vertex/element counts out of range");

  std::vector<Vec2> pts(nv);
  for (int i = 0; i < nv; ++i) {
    if (!next_line(in, line, lineno)) fail(lineno, "unexpected end of file in vertex list");
    std::istringstream ls(line);
    double x, y;
    ls >> x >> y;
    if (ls.fail()) fail(lineno, "expected 'x y'");
    pts[i] = Vec2(x, y);
  }

  std::vector<std::vector<int>> loops(nt);
  for (int t = 0; t < nt; ++t) {
    if (!next_line(in, line, lineno)) fail(lineno, "unexpected end of file in element list");
    std::istringstream ls(line);
    int m = 0;
    ls >> m;
    if (ls.fail() || m < 3) fail(lineno, "expected 'm v1 ... vm' with m >= 3");
    loops[t].resize(m);
    for (int q = 0; q < m; ++q) {
      ls >> loops[t][q];
      if (ls.fail()) fail(lineno, "element lists fewer vertices than declared");
      if (loops[t][q] < 0 || loops[t][q] >= nv) fail(lineno, "vertex id out of range");
    }
  }

  return build_mesh(std::move(pts), std::move(loops));
}

void write_mesh(const Mesh& mesh, std::ostream& out) {
  out << "polymesh 2 " << mesh.n_vertices() << " " << mesh.n_elements() << "\n";
  char buf[64];
  for (const Vertex& v : mesh.vertices) {
    // %.17g preserves doubles bit-exactly across a save/load round trip
    std::snprintf(buf, sizeof buf, "%.17g %.17g", v.x, v.y);
    out << buf << "\n";
  }
  for (const Element& el : mesh.elements) {
    out << el.vertices.size();
    for (int v : el.vertices) out << " " << v;
    out << "\n";
  }
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open mesh file: " + path);
  return parse_mesh(in);
}

void save_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write mesh file: " + path);
  write_mesh(mesh, out);
}

}  // namespace wg
