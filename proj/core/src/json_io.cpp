#include "branchwork/json_io.hpp"

#include <algorithm>
#include <sstream>

namespace branchwork::io {

namespace {

BigInt bigint_from_string(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError("not a decimal integer: '" + s + "'");
    return BigInt(s);
}

BigInt bigint_field(const json& j) {
    if (j.is_string())
        return bigint_from_string(j.get<std::string>());
    if (j.is_number_unsigned())
        return BigInt(j.get<unsigned long long>());
    throw DomainError("integer field must be a decimal string or number");
}

const json& member(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw DomainError(std::string("missing field '") + key + "'");
    return j.at(key);
}

} // namespace

json to_json(const F2Vector& v) {
    json support = json::array();
    for (const BigInt& s : v.support())
        support.push_back(s.str());
    return json{{"polarity", v.is_sparse() ? "sparse" : "cosparse"},
                {"support", support}};
}

F2Vector f2vector_from_json(const json& j, const Budgets& budgets) {
    const std::string pol = member(j, "polarity").get<std::string>();
    if (pol != "sparse" && pol != "cosparse")
        throw DomainError("polarity must be 'sparse' or 'cosparse'");
    const json& sup = member(j, "support");
    if (!sup.is_array())
        throw DomainError("support must be an array");
    std::vector<BigInt> indices;
    indices.reserve(sup.size());
    for (const json& s : sup)
        indices.push_back(bigint_field(s));
    return pol == "sparse" ? F2Vector::sparse(std::move(indices), budgets.support)
                           : F2Vector::cosparse(std::move(indices), budgets.support);
}

json to_json(const TowerInt& t) {
    if (t.is_exact())
        return json{{"exact", t.exact_value().str()}};
    return json{{"tower", json{{"base", t.base()},
                               {"height", t.height()},
                               {"top", to_json(t.top())}}}};
}

TowerInt tower_from_json(const json& j, const Budgets& budgets) {
    if (j.is_object() && j.contains("exact"))
        return TowerInt(bigint_field(j.at("exact")), budgets.tower_bits);
    if (j.is_object() && j.contains("tower")) {
        const json& t = j.at("tower");
        return TowerInt::tower(member(t, "base").get<unsigned>(),
                               member(t, "height").get<unsigned>(),
                               tower_from_json(member(t, "top"), budgets),
                               budgets.tower_bits);
    }
    throw DomainError("tower integer needs an 'exact' or 'tower' field");
}

json to_json(const Word& w) {
    json letters = json::array();
    for (const Letter& l : w.letters) {
        if (l.directed)
            letters.push_back(json{{"directed", true}});
        else
            letters.push_back(json{{"rooted", to_json(l.rooted)}});
    }
    return json{{"level", w.level}, {"letters", letters}};
}

Word word_from_json(const json& j, const Budgets& budgets) {
    Word w;
    w.level = member(j, "level").get<unsigned>();
    const json& letters = member(j, "letters");
    if (!letters.is_array())
        throw DomainError("letters must be an array");
    for (const json& l : letters) {
        if (l.is_object() && l.contains("directed")) {
            if (!l.at("directed").is_boolean() || !l.at("directed").get<bool>())
                throw DomainError("a directed letter is {\"directed\":true}");
            w.letters.push_back(Letter::make_directed());
        } else if (l.is_object() && l.contains("rooted")) {
            w.letters.push_back(
                Letter::make_rooted(f2vector_from_json(l.at("rooted"), budgets)));
        } else {
            throw DomainError("letter needs a 'directed' or 'rooted' field");
        }
    }
    return normalize(w.level, w.letters, std::nullopt, budgets);
}

json to_json(const VertexPath& v) {
    json parts = json::array();
    for (const F2Vector& p : v.parts)
        parts.push_back(to_json(p));
    return json{{"start_level", v.start_level}, {"parts", parts}};
}

VertexPath vertex_from_json(const json& j, const Budgets& budgets) {
    VertexPath v;
    v.start_level = member(j, "start_level").get<unsigned>();
    const json& parts = member(j, "parts");
    if (!parts.is_array())
        throw DomainError("parts must be an array");
    for (const json& p : parts)
        v.parts.push_back(f2vector_from_json(p, budgets));
    return v;
}

json to_json(const Portrait& p) {
    json children = json::object();
    for (const auto& [x, child] : p.children)
        children[x.repr()] = to_json(child);
    return json{{"t", to_json(p.translation)}, {"children", children}};
}

Portrait portrait_from_json(const json& j, const Budgets& budgets) {
    Portrait p;
    p.translation = f2vector_from_json(member(j, "t"), budgets);
    const json& children = member(j, "children");
    if (!children.is_object())
        throw DomainError("children must be an object keyed by vertex");
    for (auto it = children.begin(); it != children.end(); ++it)
        p.children.emplace_back(f2vector_from_repr(it.key(), budgets),
                                portrait_from_json(it.value(), budgets));
    std::sort(p.children.begin(), p.children.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return p;
}

json to_json(const GroupSpec& spec) {
    if (spec.family == Family::Kr)
        return json{{"family", "Kr"}, {"r", spec.r}};
    return json{{"family", "G"}, {"f0", spec.f0}, {"base", spec.base_index}};
}

GroupSpec spec_from_json(const json& j) {
    const std::string family = member(j, "family").get<std::string>();
    if (family == "Kr")
        return GroupSpec::kr(member(j, "r").get<unsigned>());
    if (family == "G") {
        unsigned base = 0;
        if (j.contains("base"))
            base = j.at("base").get<unsigned>();
        return GroupSpec::growing(member(j, "f0").get<unsigned>(), base);
    }
    throw DomainError("family must be 'Kr' or 'G'");
}

F2Vector f2vector_from_repr(const std::string& s, const Budgets& budgets) {
    if (s.size() < 3 || (s[0] != 'S' && s[0] != 'C') || s[1] != '{' ||
        s.back() != '}')
        throw DomainError("bad vector literal: '" + s + "'");
    std::vector<BigInt> indices;
    std::string body = s.substr(2, s.size() - 3);
    std::istringstream in(body);
    std::string tok;
    while (std::getline(in, tok, ','))
        indices.push_back(bigint_from_string(tok));
    return s[0] == 'S' ? F2Vector::sparse(std::move(indices), budgets.support)
                       : F2Vector::cosparse(std::move(indices), budgets.support);
}

namespace {

std::string csv_quote(const std::string& field) {
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += "\"\"";
        else
            out += c;
    }
    out += "\"";
    return out;
}

} // namespace

std::string period_table_csv(const PeriodTable& table) {
    std::string out = "# format=1\n";
    out += "n,ball_size,pi,witness_json\n";
    for (const PeriodRow& row : table.rows) {
        out += std::to_string(row.n);
        out += ',';
        out += std::to_string(row.ball_size);
        out += ',';
        out += row.pi.str();
        out += ',';
        out += csv_quote(to_json(row.witness).dump());
        out += '\n';
    }
    return out;
}

} // namespace branchwork::io
