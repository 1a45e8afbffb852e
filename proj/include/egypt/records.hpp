#pragma once

// Wire formats for representations. JSON records are the interchange unit:
//   {"target":"1/1","denoms":["2","3","6"]}
// all integers as decimal strings, fields in that order, no whitespace.
// CSV is the same data flattened: 1/1,2,3,6

#include <egypt/repr.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace egypt {

inline std::string serialize(const Representation& rep) {
    std::string out = "{\"target\":\"" + frac(rep.target) + "\",\"denoms\":[";
    for (std::size_t i = 0; i < rep.denoms.size(); ++i) {
        if (i) out += ',';
        out += '"';
        out += dec(rep.denoms[i]);
        out += '"';
    }
    out += "]}";
    return out;
}

namespace detail {

inline std::size_t locate(const std::string& s, const std::string& token) {
    auto pos = s.find('"' + token + '"');
    return pos == std::string::npos ? 0 : pos + 1;
}

}  // namespace detail

inline Representation deserialize(const std::string& s) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(s);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error("invalid JSON", e.byte);
    }
    if (!j.is_object()) throw parse_error("expected a JSON object", 0);
    if (!j.contains("target") || !j["target"].is_string())
        throw parse_error("missing string field \"target\"", 0);
    if (!j.contains("denoms") || !j["denoms"].is_array())
        throw parse_error("missing array field \"denoms\"", 0);
    if (j.size() != 2) throw parse_error("unexpected extra fields", 0);

    std::string tstr = j["target"].get<std::string>();
    Ratio target = parse_ratio(tstr, detail::locate(s, tstr));

    std::vector<Natural> denoms;
    for (const auto& el : j["denoms"]) {
        if (!el.is_string())
            throw parse_error("denominators must be decimal strings", 0);
        std::string dstr = el.get<std::string>();
        std::size_t pos = detail::locate(s, dstr);
        Natural d = parse_natural(dstr, pos);
        if (d == 0) throw zero_denominator("zero denominator in record");
        if (!denoms.empty() && d < denoms.back())
            throw parse_error("denominators not nondecreasing", pos);
        denoms.push_back(std::move(d));
    }
    return canonicalize(target, std::move(denoms));
}

inline std::string serialize_csv(const Representation& rep) {
    std::string out = frac(rep.target);
    for (const auto& d : rep.denoms) {
        out += ',';
        out += dec(d);
    }
    return out;
}

inline Representation deserialize_csv(const std::string& s) {
    std::vector<std::pair<std::string, std::size_t>> tokens;
    std::size_t start = 0;
    while (true) {
        auto comma = s.find(',', start);
        tokens.emplace_back(s.substr(start, comma - start), start);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (tokens.size() < 2) throw parse_error("expected target,denominators", 0);
    Ratio target = parse_ratio(tokens[0].first, tokens[0].second);
    std::vector<Natural> denoms;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        Natural d = parse_natural(tokens[i].first, tokens[i].second);
        if (d == 0) throw zero_denominator("zero denominator in record");
        if (!denoms.empty() && d < denoms.back())
            throw parse_error("denominators not nondecreasing", tokens[i].second);
        denoms.push_back(std::move(d));
    }
    return canonicalize(target, std::move(denoms));
}

}  // namespace egypt
