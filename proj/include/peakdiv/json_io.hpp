#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "peakdiv/economy.hpp"
#include "peakdiv/option_sets.hpp"

namespace peakdiv {

// JSON value tree that keeps every number as an exact rational. Input
// numbers written as decimal literals are captured from the raw token, so
// "0.1" really is 1/10 and not the nearest double.
class JValue {
  public:
    using Array = std::vector<JValue>;
    using Object = std::vector<std::pair<std::string, JValue>>;

    JValue() : v_(nullptr) {}
    explicit JValue(std::nullptr_t) : v_(nullptr) {}
    explicit JValue(bool b) : v_(b) {}
    explicit JValue(Rat r) : v_(std::move(r)) {}
    explicit JValue(std::string s) : v_(std::move(s)) {}
    explicit JValue(Array a) : v_(std::move(a)) {}
    explicit JValue(Object o) : v_(std::move(o)) {}

    bool is_null() const { return std::holds_alternative<std::nullptr_t>(v_); }
    bool is_bool() const { return std::holds_alternative<bool>(v_); }
    bool is_number() const { return std::holds_alternative<Rat>(v_); }
    bool is_string() const { return std::holds_alternative<std::string>(v_); }
    bool is_array() const { return std::holds_alternative<Array>(v_); }
    bool is_object() const { return std::holds_alternative<Object>(v_); }

    bool as_bool() const { return expect<bool>("boolean"); }
    const Rat& as_number() const { return expect<Rat>("number"); }
    const std::string& as_string() const { return expect<std::string>("string"); }
    const Array& as_array() const { return expect<Array>("array"); }
    const Object& as_object() const { return expect<Object>("object"); }

    long as_long() const {
        const Rat& r = as_number();
        if (denominator(r) != 1) throw ParseError("expected an integer, got " + rat_string(r));
        return numerator(r).convert_to<long>();
    }

    const JValue* find(std::string_view key) const {
        for (const auto& [k, val] : as_object())
            if (k == key) return &val;
        return nullptr;
    }

    const JValue& at(std::string_view key) const {
        const JValue* v = find(key);
        if (!v) throw ParseError("missing key '" + std::string(key) + "'");
        return *v;
    }

  private:
    template <typename T>
    const T& expect(const char* what) const {
        const T* p = std::get_if<T>(&v_);
        if (!p) throw ParseError(std::string("expected a ") + what);
        return *p;
    }

    std::variant<std::nullptr_t, bool, Rat, std::string, Array, Object> v_;
};

namespace detail {

// SAX handler that builds a JValue tree. Floats arrive with their raw token,
// which is parsed as an exact decimal.
class ExactSax : public nlohmann::json_sax<nlohmann::json> {
  public:
    JValue result;

    bool null() override { return push(JValue(nullptr)); }
    bool boolean(bool val) override { return push(JValue(val)); }
    bool number_integer(number_integer_t val) override { return push(JValue(Rat(static_cast<long long>(val)))); }
    bool number_unsigned(number_unsigned_t val) override {
        return push(JValue(Rat(static_cast<unsigned long long>(val))));
    }
    bool number_float(number_float_t, const string_t& raw) override { return push(JValue(parse_decimal(raw))); }
    bool string(string_t& val) override { return push(JValue(std::string(val))); }
    bool binary(binary_t&) override { throw ParseError("binary values are not supported"); }

    bool start_object(std::size_t) override {
        stack_.emplace_back(Frame{JValue::Object{}, {}, true});
        return true;
    }
    bool key(string_t& val) override {
        stack_.back().pending_key = val;
        return true;
    }
    bool end_object() override {
        JValue done(std::move(std::get<JValue::Object>(stack_.back().container)));
        stack_.pop_back();
        return push(std::move(done));
    }
    bool start_array(std::size_t) override {
        stack_.emplace_back(Frame{JValue::Array{}, {}, false});
        return true;
    }
    bool end_array() override {
        JValue done(std::move(std::get<JValue::Array>(stack_.back().container)));
        stack_.pop_back();
        return push(std::move(done));
    }

    bool parse_error(std::size_t position, const std::string&,
                     const nlohmann::detail::exception& ex) override {
        throw ParseError("JSON parse error at byte " + std::to_string(position) + ": " + ex.what());
    }

  private:
    struct Frame {
        std::variant<JValue::Object, JValue::Array> container;
        std::string pending_key;
        bool is_object;
    };

    bool push(JValue v) {
        if (stack_.empty()) {
            result = std::move(v);
            return true;
        }
        Frame& top = stack_.back();
        if (top.is_object)
            std::get<JValue::Object>(top.container).emplace_back(std::move(top.pending_key), std::move(v));
        else
            std::get<JValue::Array>(top.container).push_back(std::move(v));
        return true;
    }

    std::vector<Frame> stack_;
};

} // namespace detail

inline JValue parse_json_exact(std::string_view text) {
    detail::ExactSax sax;
    nlohmann::json::sax_parse(text, &sax);
    return std::move(sax.result);
}

inline JValue load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_json_exact(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// --- typed readers ---------------------------------------------------------

// Amounts are accepted as JSON numbers (exact decimals), as {"num": i,
// "den": j} pairs, or as decimal strings.
inline Rat read_amount(const JValue& v) {
    if (v.is_number()) return v.as_number();
    if (v.is_string()) return parse_decimal(v.as_string());
    if (v.is_object()) {
        const Rat num = read_amount(v.at("num"));
        const Rat den = read_amount(v.at("den"));
        if (denominator(num) != 1 || denominator(den) != 1 || den == 0)
            throw ParseError("num/den must be integers with den != 0");
        return Rat(numerator(num), numerator(den));
    }
    throw ParseError("expected a number, a decimal string, or {num, den}");
}

inline Preference read_preference(const JValue& v) {
    Preference p;
    p.peak = read_amount(v.at("peak"));
    if (const JValue* x = v.find("slope_left")) p.slope_left = read_amount(*x);
    if (const JValue* x = v.find("slope_right")) p.slope_right = read_amount(*x);
    if (const JValue* x = v.find("jump_left")) p.jump_left = read_amount(*x);
    if (const JValue* x = v.find("jump_right")) p.jump_right = read_amount(*x);
    validate(p);
    return p;
}

inline Economy read_economy(const JValue& v) {
    const Rat omega = read_amount(v.at("omega"));
    std::vector<Agent> agents;
    for (const JValue& a : v.at("agents").as_array()) {
        Agent agent;
        agent.id = static_cast<AgentId>(a.at("id").as_long());
        agent.pref = read_preference(a.at("pref"));
        agents.push_back(std::move(agent));
    }
    return Economy(std::move(agents), omega);
}

inline PrefShape read_shape(const JValue& v) {
    PrefShape s;
    if (const JValue* x = v.find("slope_left")) s.slope_left = read_amount(*x);
    if (const JValue* x = v.find("slope_right")) s.slope_right = read_amount(*x);
    if (const JValue* x = v.find("jump_left")) s.jump_left = read_amount(*x);
    if (const JValue* x = v.find("jump_right")) s.jump_right = read_amount(*x);
    return s;
}

inline ProfileGrid read_profile_grid(const JValue& v) {
    ProfileGrid g;
    for (const JValue& p : v.at("peaks").as_array()) g.prefs.peaks.push_back(read_amount(p));
    if (const JValue* shapes = v.find("shapes")) {
        g.prefs.shapes.clear();
        for (const JValue& s : shapes->as_array()) g.prefs.shapes.push_back(read_shape(s));
    }
    g.n_opponents = static_cast<std::size_t>(v.at("n_opponents").as_long());
    if (const JValue* b = v.find("budget")) g.budget = static_cast<std::uint64_t>(b->as_long());
    if (g.prefs.peaks.empty() || g.prefs.shapes.empty()) throw ParseError("grid must be nonempty");
    return g;
}

// --- writers ----------------------------------------------------------------

inline nlohmann::json int_to_json(const Int& v) {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    if (v >= lo && v <= hi) return v.convert_to<std::int64_t>();
    return v.str();
}

inline nlohmann::json rat_to_json(const Rat& r) {
    return nlohmann::json{{"num", int_to_json(numerator(r))}, {"den", int_to_json(denominator(r))}};
}

inline nlohmann::json preference_to_json(const Preference& p) {
    nlohmann::json j{{"peak", rat_to_json(p.peak)}};
    if (p.slope_left != 1) j["slope_left"] = rat_to_json(p.slope_left);
    if (p.slope_right != 1) j["slope_right"] = rat_to_json(p.slope_right);
    if (p.jump_left != 0) j["jump_left"] = rat_to_json(p.jump_left);
    if (p.jump_right != 0) j["jump_right"] = rat_to_json(p.jump_right);
    return j;
}

inline nlohmann::json economy_to_json(const Economy& econ) {
    nlohmann::json agents = nlohmann::json::array();
    for (const Agent& a : econ.agents())
        agents.push_back(nlohmann::json{{"id", a.id}, {"pref", preference_to_json(a.pref)}});
    return nlohmann::json{{"omega", rat_to_json(econ.omega())}, {"agents", std::move(agents)}};
}

inline nlohmann::json allocation_to_json(const Allocation& alloc) {
    nlohmann::json amounts = nlohmann::json::object();
    for (std::size_t i = 0; i < alloc.size(); ++i)
        amounts[std::to_string(alloc.ids()[i])] = rat_to_json(alloc.amounts()[i]);
    return nlohmann::json{{"amounts", std::move(amounts)}};
}

inline nlohmann::json option_set_to_json(const OptionSet& o) {
    nlohmann::json j{{"provenance", o.provenance}, {"omega", rat_to_json(o.omega)}};
    if (o.kind == OptionSet::Kind::Interval) {
        j["kind"] = "interval";
        j["lo"] = rat_to_json(o.lo);
        j["hi"] = rat_to_json(o.hi);
    } else {
        j["kind"] = "samples";
        nlohmann::json s = nlohmann::json::array();
        for (const Rat& x : o.samples) s.push_back(rat_to_json(x));
        j["samples"] = std::move(s);
    }
    return j;
}

} // namespace peakdiv
