// io.hpp: click-record JSON Lines and plain CSV output

#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hompost/dynamics.hpp"
#include "hompost/errors.hpp"
#include "hompost/trajectories.hpp"

namespace hompost::io {

inline std::string detector_tag(Detector d) { return std::string(1, to_char(d)); }

inline Detector parse_detector(const std::string& tag) {
    if (tag == "+") return Detector::Plus;
    if (tag == "-") return Detector::Minus;
    throw IoError("detector tag must be \"+\" or \"-\", got \"" + tag + "\"");
}

// {"t1":…,"d1":"+","tau":…,"d2":"-"}; doubles are written shortest round-trip.
inline std::string to_json_line(const ClickRecord& r) {
    nlohmann::ordered_json j;
    j["t1"] = r.t1;
    j["d1"] = detector_tag(r.d1);
    j["tau"] = r.tau;
    j["d2"] = detector_tag(r.d2);
    return j.dump();
}

inline ClickRecord from_json_line(std::string_view line) {
    try {
        const auto j = nlohmann::json::parse(line);
        ClickRecord r{j.at("t1").get<double>(), parse_detector(j.at("d1").get<std::string>()),
                      j.at("tau").get<double>(), parse_detector(j.at("d2").get<std::string>())};
        if (!(r.t1 >= 0.0) || !(r.tau >= 0.0)) throw IoError("record times must be >= 0");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed record: ") + e.what());
    }
}

inline void write_records(std::ostream& out, const std::vector<ClickRecord>& records) {
    for (const auto& r : records) out << to_json_line(r) << '\n';
    if (!out) throw IoError("failed writing records");
}

// Blank lines are skipped; any other unparsable line is an error naming its line number.
inline std::vector<ClickRecord> read_records(std::istream& in) {
    std::vector<ClickRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(from_json_line(line));
        } catch (const IoError& e) {
            throw IoError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (in.bad()) throw IoError("failed reading records");
    return out;
}

inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out), columns_(header.size()) {
        for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
        out_ << '\n';
    }

    void row(const std::vector<double>& values) {
        if (values.size() != columns_) throw IoError("csv row width does not match header");
        for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
        out_ << '\n';
        if (!out_) throw IoError("failed writing csv row");
    }

private:
    std::ostream& out_;
    std::size_t columns_;
};

} // namespace hompost::io
