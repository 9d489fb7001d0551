#pragma once

#include "pmhd/stepper.hpp"

#include <fstream>
#include <string>
#include <vector>

namespace pmhd {

inline constexpr const char* kTimeSeriesHeader = "# pmhd-timeseries v1";

struct TimeSeriesRow {
    long step = 0;
    EnergyLedger ledger;
    double mass = 0.0;
    double divB = 0.0;
    int mechPicard = 0;
    int inductionPicard = 0;
    bool inductionFlagged = false;
    std::vector<BodyReport> bodies;

    static TimeSeriesRow fromStep(long step, const StepResult& r);
};

/// Column names for a run with the given body ids.
std::vector<std::string> timeSeriesColumns(const std::vector<int>& bodyIds);

/// Writes the versioned header and column line, then one CSV row per call.
class TimeSeriesWriter {
public:
    TimeSeriesWriter(const std::string& path, const std::vector<int>& bodyIds);
    void write(const TimeSeriesRow& row);
    void flush();

private:
    std::ofstream os_;
    std::string path_;
    std::size_t bodies_;
};

void emitTimeSeries(const std::string& path, const std::vector<TimeSeriesRow>& rows, const std::vector<int>& bodyIds);

struct TimeSeriesTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    /// Index of a column; throws ArgumentError if absent.
    std::size_t column(const std::string& name) const;
};

TimeSeriesTable readTimeSeries(const std::string& path);

}  // namespace pmhd
