#include "numrange/toml_lite.hpp"

#include <cctype>
#include <sstream>

#include "numrange/types.hpp"

namespace numrange {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw ConfigError("toml(line " + std::to_string(line) + "): " + what);
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// removes a trailing comment, respecting double-quoted strings
std::string without_comment(const std::string& s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '"' && (i == 0 || s[i - 1] != '\\')) in_string = !in_string;
        if (c == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

nlohmann::json parse_scalar(const std::string& tok, int line) {
    if (tok.empty()) fail(line, "empty value");
    if (tok.front() == '"') {
        if (tok.size() < 2 || tok.back() != '"') fail(line, "unterminated string");
        std::string out;
        for (std::size_t i = 1; i + 1 < tok.size(); ++i) {
            if (tok[i] == '\\' && i + 2 < tok.size()) {
                ++i;
                switch (tok[i]) {
                    case 'n': out.push_back('\n'); break;
                    case 't': out.push_back('\t'); break;
                    case '"': out.push_back('"'); break;
                    case '\\': out.push_back('\\'); break;
                    default: fail(line, "unsupported escape");
                }
            } else {
                out.push_back(tok[i]);
            }
        }
        return out;
    }
    if (tok == "true") return true;
    if (tok == "false") return false;
    try {
        std::size_t used = 0;
        if (tok.find_first_of(".eE") == std::string::npos ||
            (tok.size() > 1 && tok.substr(0, 2) == "0x")) {
            long long v = std::stoll(tok, &used, 0);
            if (used == tok.size()) return v;
        }
        double d = std::stod(tok, &used);
        if (used == tok.size()) return d;
    } catch (...) {
    }
    fail(line, "cannot parse value '" + tok + "'");
}

std::vector<std::string> split_array_items(const std::string& body, int line) {
    std::vector<std::string> items;
    std::string cur;
    bool in_string = false;
    int depth = 0;
    for (char c : body) {
        if (c == '"') in_string = !in_string;
        if (!in_string) {
            if (c == '[') ++depth;
            if (c == ']') --depth;
            if (c == ',' && depth == 0) {
                items.push_back(strip(cur));
                cur.clear();
                continue;
            }
        }
        cur.push_back(c);
    }
    if (in_string || depth != 0) fail(line, "unbalanced array");
    std::string last = strip(cur);
    if (!last.empty()) items.push_back(last);
    return items;
}

nlohmann::json parse_value(const std::string& tok, int line) {
    if (!tok.empty() && tok.front() == '[') {
        if (tok.back() != ']') fail(line, "arrays must close on the same line");
        nlohmann::json arr = nlohmann::json::array();
        for (const std::string& item : split_array_items(tok.substr(1, tok.size() - 2), line))
            arr.push_back(parse_value(item, line));
        return arr;
    }
    return parse_scalar(tok, line);
}

nlohmann::json* descend(nlohmann::json& root, const std::string& dotted, int line) {
    nlohmann::json* cur = &root;
    std::stringstream ss(dotted);
    std::string part;
    while (std::getline(ss, part, '.')) {
        part = strip(part);
        if (part.empty()) fail(line, "empty table name component");
        cur = &(*cur)[part];
        if (!cur->is_object() && !cur->is_null()) fail(line, "table conflicts with value");
    }
    return cur;
}

}  // namespace

nlohmann::json toml_lite_parse(const std::string& text) {
    nlohmann::json root = nlohmann::json::object();
    nlohmann::json* table = &root;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = strip(without_comment(raw));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "unterminated table header");
            table = descend(root, s.substr(1, s.size() - 2), line);
            if (table->is_null()) *table = nlohmann::json::object();
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        std::string key = strip(s.substr(0, eq));
        std::string value = strip(s.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        if (key.find('.') != std::string::npos) {
            std::size_t last_dot = key.rfind('.');
            nlohmann::json* sub = descend(*table, key.substr(0, last_dot), line);
            if (sub->is_null()) *sub = nlohmann::json::object();
            (*sub)[strip(key.substr(last_dot + 1))] = parse_value(value, line);
        } else {
            (*table)[key] = parse_value(value, line);
        }
    }
    return root;
}

}  // namespace numrange
