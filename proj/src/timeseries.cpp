#include "pmhd/timeseries.hpp"

#include "pmhd/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace pmhd {
namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

TimeSeriesRow TimeSeriesRow::fromStep(long step, const StepResult& r) {
    TimeSeriesRow row;
    row.step = step;
    row.ledger = r.ledger;
    row.mass = r.mass;
    row.divB = r.divB;
    row.mechPicard = r.mechPicard;
    row.inductionPicard = r.inductionPicard;
    row.inductionFlagged = r.inductionFlagged;
    row.bodies = r.bodies;
    return row;
}

std::vector<std::string> timeSeriesColumns(const std::vector<int>& bodyIds) {
    std::vector<std::string> c = {"step",         "time",      "kinetic",  "internal", "artificial",
                                  "magnetic",     "total",     "dissipation", "sources", "regularizers",
                                  "coupling",     "slack",     "mass",     "div_b_max", "mech_picard",
                                  "induction_picard", "induction_lagged"};
    for (int id : bodyIds)
        for (const char* f : {"rigidity", "x", "y", "angle", "vx", "vy", "w"})
            c.push_back("body" + std::to_string(id) + "_" + f);
    return c;
}

TimeSeriesWriter::TimeSeriesWriter(const std::string& path, const std::vector<int>& bodyIds)
    : os_(path), path_(path), bodies_(bodyIds.size()) {
    if (!os_) throw IoError("cannot open '" + path + "' for writing");
    os_ << kTimeSeriesHeader << '\n';
    const auto cols = timeSeriesColumns(bodyIds);
    for (std::size_t k = 0; k < cols.size(); ++k) os_ << (k ? "," : "") << cols[k];
    os_ << '\n';
}

void TimeSeriesWriter::write(const TimeSeriesRow& r) {
    if (r.bodies.size() != bodies_) throw ArgumentError("time series row has the wrong number of bodies");
    const EnergyLedger& l = r.ledger;
    os_ << r.step;
    for (double v : {l.time, l.kinetic, l.internal, l.artificial, l.magnetic, l.total(), l.dissipation, l.sources,
                     l.regularizers, l.coupling, l.slack, r.mass, r.divB})
        os_ << ',' << g17(v);
    os_ << ',' << r.mechPicard << ',' << r.inductionPicard << ',' << (r.inductionFlagged ? 1 : 0);
    for (const auto& b : r.bodies)
        for (double v : {b.rigidity, b.X[0], b.X[1], b.angle, b.V[0], b.V[1], b.w}) os_ << ',' << g17(v);
    os_ << '\n';
    if (!os_) throw IoError("write to '" + path_ + "' failed");
}

void TimeSeriesWriter::flush() {
    os_.flush();
    if (!os_) throw IoError("write to '" + path_ + "' failed");
}

void emitTimeSeries(const std::string& path, const std::vector<TimeSeriesRow>& rows, const std::vector<int>& bodyIds) {
    if (rows.empty()) throw ArgumentError("emitTimeSeries: need at least one row");
    TimeSeriesWriter w(path, bodyIds);
    for (const auto& r : rows) w.write(r);
    w.flush();
}

std::size_t TimeSeriesTable::column(const std::string& name) const {
    for (std::size_t k = 0; k < columns.size(); ++k)
        if (columns[k] == name) return k;
    throw ArgumentError("time series has no column '" + name + "'");
}

TimeSeriesTable readTimeSeries(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(is, line) || line != kTimeSeriesHeader)
        throw IoError("'" + path + "' is not a " + std::string(kTimeSeriesHeader) + " file");
    TimeSeriesTable t;
    if (!std::getline(is, line)) throw IoError("'" + path + "': missing column line");
    {
        std::istringstream cs(line);
        std::string name;
        while (std::getline(cs, name, ',')) t.columns.push_back(name);
    }
    long lineNo = 2;
    while (std::getline(is, line)) {
        ++lineNo;
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream rs(line);
        std::string cell;
        while (std::getline(rs, cell, ',')) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || *end != '\0')
                throw IoError("'" + path + "' line " + std::to_string(lineNo) + ": bad value '" + cell + "'");
            row.push_back(v);
        }
        if (row.size() != t.columns.size())
            throw IoError("'" + path + "' line " + std::to_string(lineNo) + ": expected " +
                          std::to_string(t.columns.size()) + " columns");
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace pmhd
