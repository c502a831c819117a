#pragma once

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "torsion_forge/json_io.hpp"

namespace tforge {

/// RFC 3339 UTC timestamp. Honors SOURCE_DATE_EPOCH so that scans can be
/// reproduced byte for byte.
inline std::string store_timestamp() {
    std::time_t t;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
        t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    else
        t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Append-only line-delimited store: one certificate JSON per line together
/// with {created_at, family, verification_status}.
class CurveStore {
public:
    struct Entry {
        Json certificate;
        std::string created_at;
        std::string family;
        std::string verification_status;
    };

    explicit CurveStore(std::string path) : path_(std::move(path)) {}

    const std::string& path() const { return path_; }

    void append(const Json& certificate, const std::string& family,
                const std::string& verification_status,
                const std::string& created_at) {
        std::ofstream out(path_, std::ios::app);
        if (!out) throw Error("cannot open store for append: " + path_);
        Json line{{"certificate", certificate},
                  {"created_at", created_at},
                  {"family", family},
                  {"verification_status", verification_status}};
        out << line.dump() << '\n';
        if (!out) throw Error("write to store failed: " + path_);
    }

    std::vector<Entry> read_all() const {
        std::ifstream in(path_);
        if (!in) throw Error("cannot open store: " + path_);
        std::vector<Entry> entries;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            Json j;
            try {
                j = Json::parse(line);
                entries.push_back(Entry{j.at("certificate"),
                                        j.at("created_at").get<std::string>(),
                                        j.at("family").get<std::string>(),
                                        j.at("verification_status").get<std::string>()});
            } catch (const std::exception& e) {
                throw Error("store line " + std::to_string(lineno) + " is invalid: " +
                            e.what());
            }
        }
        return entries;
    }

private:
    std::string path_;
};

} // namespace tforge
