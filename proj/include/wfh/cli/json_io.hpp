#pragma once

#include <cstdio>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "wfh/errors.hpp"
#include "wfh/exact_core/qseries.hpp"
#include "wfh/exact_core/rational.hpp"

namespace wfh::cli {

using Json = nlohmann::json;

/// Read-only view of a manifest node that remembers which object keys were
/// consumed, so that leftovers can be rejected as unknown fields.
class Node {
public:
    Node(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

    const std::string& path() const { return path_; }
    const Json& raw() const { return *j_; }

    [[noreturn]] void fail(const std::string& what) const { throw SchemaError(path_.empty() ? "$" : path_, what); }

    bool is_object() const { return j_->is_object(); }
    bool is_array() const { return j_->is_array(); }
    bool is_string() const { return j_->is_string(); }

    void require_object() const {
        if (!j_->is_object()) fail("expected an object");
    }
    bool has(const std::string& key) const {
        require_object();
        return j_->contains(key);
    }
    Node at(const std::string& key) const {
        require_object();
        auto it = j_->find(key);
        if (it == j_->end()) throw SchemaError(child(key), "required field is missing");
        used_.insert(key);
        return Node(*it, child(key));
    }
    std::optional<Node> get(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return at(key);
    }
    /// Every key of the object, marked as consumed.
    std::vector<std::pair<std::string, Node>> items() const {
        require_object();
        std::vector<std::pair<std::string, Node>> out;
        for (auto it = j_->begin(); it != j_->end(); ++it) {
            used_.insert(it.key());
            out.emplace_back(it.key(), Node(it.value(), child(it.key())));
        }
        return out;
    }
    std::vector<Node> elements() const {
        if (!j_->is_array()) fail("expected an array");
        std::vector<Node> out;
        for (std::size_t i = 0; i < j_->size(); ++i) out.emplace_back((*j_)[i], path_ + "[" + std::to_string(i) + "]");
        return out;
    }
    /// Rejects any key that was never consumed.
    void finish() const {
        require_object();
        for (auto it = j_->begin(); it != j_->end(); ++it)
            if (!used_.count(it.key())) throw SchemaError(child(it.key()), "unknown field");
    }

    long integer(long lo = std::numeric_limits<long>::min(), long hi = std::numeric_limits<long>::max()) const {
        if (!j_->is_number_integer()) fail("expected an integer");
        const long v = j_->get<long>();
        if (v < lo || v > hi)
            fail("value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return v;
    }
    std::size_t count(std::size_t lo = 0, std::size_t hi = 1u << 20) const {
        return static_cast<std::size_t>(integer(static_cast<long>(lo), static_cast<long>(hi)));
    }
    bool boolean() const {
        if (!j_->is_boolean()) fail("expected true or false");
        return j_->get<bool>();
    }
    std::string string() const {
        if (!j_->is_string()) fail("expected a string");
        return j_->get<std::string>();
    }
    double number() const {
        if (!j_->is_number()) fail("expected a number");
        return j_->get<double>();
    }
    /// "p/q" string or an integer literal.
    Rational rational() const {
        if (j_->is_number_integer()) return Rational(j_->get<long>());
        if (!j_->is_string()) fail("expected a rational as \"p/q\" or an integer");
        try {
            return parse_rational(j_->get<std::string>());
        } catch (const DomainError& e) {
            fail(e.what());
        }
    }
    std::string choice(const std::vector<std::string>& allowed) const {
        const std::string s = string();
        for (const auto& a : allowed)
            if (a == s) return s;
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        fail("'" + s + "' is not one of: " + list);
    }

private:
    std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const Json* j_;
    std::string path_;
    mutable std::set<std::string> used_;
};

inline Json rational_json(const Rational& r) { return to_string(r); }

inline Json qseries_json(const QSeries& s) {
    Json a = Json::array();
    for (std::size_t n = 0; n <= s.order(); ++n) a.push_back(to_string(s[n]));
    return a;
}

/// Scientific notation with 15 significant digits.
inline std::string float_text(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.14e", x == 0 ? 0.0 : x);
    return buf;
}

}  // namespace wfh::cli
