#include "pmhd/snapshot.hpp"

#include "pmhd/errors.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pmhd {
namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void writeSnapshot(std::ostream& os, const ScalarField& f) {
    const Grid& g = f.grid();
    os << g.nx << ' ' << g.ny << ' ' << g17(g.dx) << ' ' << g17(g.dy) << ' ' << toString(f.location()) << '\n';
    os << "# origin " << g17(g.x0) << ' ' << g17(g.y0) << '\n';
    for (int j = 0; j < f.sizeJ(); ++j) {
        for (int i = 0; i < f.sizeI(); ++i) os << (i ? " " : "") << g17(f(i, j));
        os << '\n';
    }
    if (!os) throw IoError("snapshot: write failed");
}

ScalarField readSnapshot(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw IoError("snapshot: missing header");
    std::istringstream head(line);
    Grid g;
    std::string tag;
    if (!(head >> g.nx >> g.ny >> g.dx >> g.dy >> tag)) throw IoError("snapshot: malformed header '" + line + "'");
    if (is.peek() == '#') {
        std::getline(is, line);
        std::istringstream origin(line);
        std::string hash, word;
        if (!(origin >> hash >> word >> g.x0 >> g.y0) || word != "origin")
            throw IoError("snapshot: malformed origin line '" + line + "'");
    }
    g.validate();
    ScalarField f(g, locationFromString(tag));
    for (double& v : f.values())
        if (!(is >> v)) throw IoError("snapshot: expected " + std::to_string(f.size()) + " values");
    return f;
}

void writeSnapshotFile(const std::string& path, const ScalarField& f) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    writeSnapshot(os, f);
}

ScalarField readSnapshotFile(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open '" + path + "' for reading");
    return readSnapshot(is);
}

}  // namespace pmhd
