#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>

#include "json.hpp"

#include "tsn/rational.hpp"
#include "tsn/space.hpp"
#include "tsn/vector.hpp"
#include "tsn/version.hpp"

namespace tsn {

// Content-addressed result cache, persisted as versioned JSON. Keys hash the
// canonical space and vector encodings together with the engine version, so
// a version bump silently invalidates every entry.
struct Cache {
    std::string path;
    nlohmann::json entries = nlohmann::json::object();
    bool dirty = false;

    static Cache load(const std::string& file) {
        Cache c;
        c.path = file;
        std::ifstream in(file);
        if (!in) return c;
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (...) {
            return c;  // unreadable cache is just a cold cache
        }
        if (!doc.is_object() || doc.value("version", "") != engine_version) return c;
        if (!doc.contains("entries") || !doc["entries"].is_array()) return c;
        for (const auto& e : doc["entries"])
            if (e.is_object() && e.contains("key") && e.contains("value"))
                c.entries[e["key"].get<std::string>()] = e["value"];
        return c;
    }

    std::optional<nlohmann::json> lookup(const std::string& key) const {
        auto it = entries.find(key);
        if (it == entries.end()) return std::nullopt;
        return *it;
    }

    void store(const std::string& key, nlohmann::json value) {
        value["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                                 std::chrono::system_clock::now().time_since_epoch())
                                 .count();
        entries[key] = std::move(value);
        dirty = true;
    }

    void save() const {
        if (!dirty || path.empty()) return;
        nlohmann::json doc;
        doc["version"] = engine_version;
        nlohmann::json arr = nlohmann::json::array();
        for (auto it = entries.begin(); it != entries.end(); ++it)
            arr.push_back(nlohmann::json{{"key", it.key()}, {"value", it.value()}});
        doc["entries"] = std::move(arr);
        std::ofstream out(path);
        out << doc.dump(2) << "\n";
    }
};

inline std::string cache_key(const Space& sp, const Vector& x) {
    unsigned long long h = fnv1a(space_str(sp));
    h = fnv1a(vector_str(x), h);
    h = fnv1a(engine_version, h);
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", h);
    return std::string(buf);
}

} // namespace tsn
