#include "fusionmod/tomlite.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace fusionmod {

namespace {

using nlohmann::json;

class TomlReader {
public:
    TomlReader(const std::string& text, const std::string& origin) : text_(text), origin_(origin) {}

    json parse() {
        root_ = json::object();
        current_ = &root_;
        for (;;) {
            skip_blank();
            if (eof()) break;
            if (peek() == '[')
                header();
            else
                key_value(*current_);
        }
        return std::move(root_);
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        std::size_t line = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i)
            if (text_[i] == '\n') ++line;
        throw FileError(origin_ + ":" + std::to_string(line) + ": " + why);
    }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return eof() ? '\0' : text_[pos_]; }
    char get() { return eof() ? '\0' : text_[pos_++]; }

    // Skips spaces and comments within a line.
    void skip_inline() {
        while (!eof()) {
            const char c = peek();
            if (c == ' ' || c == '\t') {
                ++pos_;
            } else if (c == '#') {
                while (!eof() && peek() != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    // Skips whitespace, comments, and newlines.
    void skip_blank() {
        while (!eof()) {
            skip_inline();
            if (!eof() && (peek() == '\n' || peek() == '\r'))
                ++pos_;
            else
                break;
        }
    }

    void expect_line_end() {
        skip_inline();
        if (eof()) return;
        if (peek() == '\n' || peek() == '\r') return;
        fail("unexpected trailing characters");
    }

    std::string bare_or_quoted_key() {
        skip_inline();
        if (peek() == '"') return basic_string();
        std::string k;
        while (!eof()) {
            const char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')
                k += get();
            else
                break;
        }
        if (k.empty()) fail("expected a key");
        return k;
    }

    std::string basic_string() {
        if (get() != '"') fail("expected '\"'");
        std::string s;
        while (!eof()) {
            const char c = get();
            if (c == '"') return s;
            if (c == '\n') fail("unterminated string");
            if (c == '\\') {
                const char e = get();
                switch (e) {
                    case '"': s += '"'; break;
                    case '\\': s += '\\'; break;
                    case 'n': s += '\n'; break;
                    case 't': s += '\t'; break;
                    default: fail("unsupported escape sequence");
                }
            } else {
                s += c;
            }
        }
        fail("unterminated string");
    }

    void header() {
        get();  // '['
        const bool array_of_tables = peek() == '[';
        if (array_of_tables) get();
        std::vector<std::string> path;
        for (;;) {
            path.push_back(bare_or_quoted_key());
            skip_inline();
            if (peek() == '.') {
                get();
                continue;
            }
            break;
        }
        if (get() != ']') fail("expected ']' in table header");
        if (array_of_tables && get() != ']') fail("expected ']]' in table header");
        expect_line_end();

        json* node = &root_;
        for (std::size_t i = 0; i < path.size(); ++i) {
            const bool last = (i + 1 == path.size());
            const std::string& seg = path[i];
            if (last && array_of_tables) {
                if (!node->contains(seg)) (*node)[seg] = json::array();
                json& arr = (*node)[seg];
                if (!arr.is_array()) fail("'" + seg + "' is not an array of tables");
                arr.push_back(json::object());
                node = &arr.back();
            } else {
                if (!node->contains(seg)) (*node)[seg] = json::object();
                json& next = (*node)[seg];
                if (next.is_array()) {
                    if (next.empty()) fail("'" + seg + "' has no tables yet");
                    node = &next.back();
                } else if (next.is_object()) {
                    node = &next;
                } else {
                    fail("'" + seg + "' is not a table");
                }
            }
        }
        current_ = node;
    }

    void key_value(json& table) {
        const std::string key = bare_or_quoted_key();
        skip_inline();
        if (get() != '=') fail("expected '=' after key '" + key + "'");
        skip_inline();
        if (table.contains(key)) fail("duplicate key '" + key + "'");
        table[key] = value();
        expect_line_end();
    }

    json value() {
        skip_inline();
        const char c = peek();
        if (c == '"') return basic_string();
        if (c == '[') return array();
        if (c == '{') return inline_table();
        if (c == 't' || c == 'f') {
            std::string word;
            while (!eof() && std::isalpha(static_cast<unsigned char>(peek()))) word += get();
            if (word == "true") return true;
            if (word == "false") return false;
            fail("unexpected value '" + word + "'");
        }
        if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) return number();
        fail("expected a value");
    }

    json number() {
        std::string s;
        if (peek() == '+' || peek() == '-') s += get();
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) s += get();
        if (!eof() && (peek() == '.' || peek() == 'e' || peek() == 'E'))
            fail("floating-point values are not used in catalog files");
        if (s.empty() || (s.size() == 1 && !std::isdigit(static_cast<unsigned char>(s[0]))))
            fail("malformed number");
        return static_cast<Int>(std::stoll(s));
    }

    json array() {
        get();  // '['
        json arr = json::array();
        for (;;) {
            skip_blank();
            if (peek() == ']') {
                get();
                return arr;
            }
            arr.push_back(value());
            skip_blank();
            if (peek() == ',') {
                get();
                continue;
            }
            if (peek() == ']') {
                get();
                return arr;
            }
            fail("expected ',' or ']' in array");
        }
    }

    json inline_table() {
        get();  // '{'
        json table = json::object();
        skip_inline();
        if (peek() == '}') {
            get();
            return table;
        }
        for (;;) {
            const std::string key = bare_or_quoted_key();
            skip_inline();
            if (get() != '=') fail("expected '=' in inline table");
            if (table.contains(key)) fail("duplicate key '" + key + "'");
            table[key] = value();
            skip_inline();
            if (peek() == ',') {
                get();
                skip_inline();
                continue;
            }
            if (peek() == '}') {
                get();
                return table;
            }
            fail("expected ',' or '}' in inline table");
        }
    }

    const std::string& text_;
    std::string origin_;
    std::size_t pos_ = 0;
    json root_;
    json* current_ = nullptr;
};

}  // namespace

nlohmann::json parse_toml(const std::string& text, const std::string& origin) {
    return TomlReader(text, origin).parse();
}

nlohmann::json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        try {
            return nlohmann::json::parse(text);
        } catch (const std::exception& e) {
            throw FileError(path + ": " + e.what());
        }
    }
    return parse_toml(text, path);
}

}  // namespace fusionmod
