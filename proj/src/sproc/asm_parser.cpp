#include "dqc/sproc/asm_parser.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <set>

namespace dqc::sproc {

const std::vector<GateInfo>& gate_set() {
    static const std::vector<GateInfo> gates{
        {"x", false, 1, false},    {"y", false, 1, false},     {"h", false, 1, false},
        {"rx", true, 1, false},    {"ry", true, 1, false},     {"z", false, 1, true},
        {"s", false, 1, true},     {"sdg", false, 1, true},    {"rz", true, 1, true},
        {"p", true, 1, true},      {"cx", false, 2, false},    {"cnot", false, 2, false},
        {"delay", true, 1, false}, {"reset", false, 1, false}, {"id", false, 1, false},
    };
    return gates;
}

const GateInfo* find_gate(const std::string& mnemonic) {
    for (const auto& g : gate_set()) {
        if (mnemonic == g.name) {
            return &g;
        }
    }
    return nullptr;
}

namespace {

// Recursive-descent evaluator:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | '+' unary | atom
//   atom   := number | 'pi' | '(' expr ')'
class ExprParser {
public:
    ExprParser(const std::string& s, int line) : s_(s), line_(line) {}

    double parse() {
        const double v = expr();
        skip();
        if (pos_ != s_.size()) {
            fail("unexpected '" + std::string(1, s_[pos_]) + "' in angle expression");
        }
        return v;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

    double expr() {
        double v = term();
        for (;;) {
            skip();
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
                const char op = s_[pos_++];
                const double r = term();
                v = op == '+' ? v + r : v - r;
            } else {
                return v;
            }
        }
    }
    double term() {
        double v = unary();
        for (;;) {
            skip();
            if (pos_ < s_.size() && (s_[pos_] == '*' || s_[pos_] == '/')) {
                const char op = s_[pos_++];
                const double r = unary();
                if (op == '/' && r == 0.0) {
                    fail("division by zero in angle expression");
                }
                v = op == '*' ? v * r : v / r;
            } else {
                return v;
            }
        }
    }
    double unary() {
        skip();
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            const char op = s_[pos_++];
            const double v = unary();
            return op == '-' ? -v : v;
        }
        return atom();
    }
    double atom() {
        skip();
        if (pos_ >= s_.size()) {
            fail("angle expression ends early");
        }
        if (s_[pos_] == '(') {
            ++pos_;
            const double v = expr();
            skip();
            if (pos_ >= s_.size() || s_[pos_] != ')') {
                fail("missing ')' in angle expression");
            }
            ++pos_;
            return v;
        }
        if (s_.compare(pos_, 2, "pi") == 0 &&
            (pos_ + 2 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 2])))) {
            pos_ += 2;
            return std::numbers::pi;
        }
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || (!std::isdigit(static_cast<unsigned char>(*begin)) && *begin != '.')) {
            fail("malformed angle expression near '" + s_.substr(pos_) + "'");
        }
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }

    const std::string& s_;
    int line_;
    std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
            return false;
        }
    }
    return true;
}

unsigned parse_qubit(const std::string& tok, int line) {
    const std::string t = trim(tok);
    if (t.size() < 2 || t[0] != 'q') {
        throw ParseError(line, "expected a qubit like q0, got '" + t + "'");
    }
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
            throw ParseError(line, "expected a qubit like q0, got '" + t + "'");
        }
    }
    return static_cast<unsigned>(std::stoul(t.substr(1)));
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = s.find(',', start);
        out.push_back(trim(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) {
            return out;
        }
        start = comma + 1;
    }
}

AsmStatement parse_statement(const std::string& body, int line) {
    AsmStatement st;
    st.line = line;
    std::size_t i = 0;
    while (i < body.size() && (std::isalnum(static_cast<unsigned char>(body[i])) || body[i] == '_')) {
        ++i;
    }
    const std::string word = body.substr(0, i);
    const std::string rest = trim(body.substr(i));
    if (word.empty()) {
        throw ParseError(line, "expected a mnemonic, got '" + body + "'");
    }

    if (word == "halt") {
        if (!rest.empty()) {
            throw ParseError(line, "halt takes no operands");
        }
        st.kind = StmtKind::Halt;
        return st;
    }
    if (word == "goto") {
        if (!is_identifier(rest)) {
            throw ParseError(line, "goto needs a label");
        }
        st.kind = StmtKind::Goto;
        st.name = rest;
        return st;
    }
    if (word == "bnz") {
        const auto parts = split_commas(rest);
        if (parts.size() != 2 || !is_identifier(parts[0]) || !is_identifier(parts[1])) {
            throw ParseError(line, "expected 'bnz <creg>, <label>'");
        }
        st.kind = StmtKind::Bnz;
        st.creg = parts[0];
        st.name = parts[1];
        return st;
    }
    if (word == "measure") {
        const auto arrow = rest.find("->");
        if (arrow == std::string::npos) {
            throw ParseError(line, "expected 'measure <qubit> -> <creg>'");
        }
        st.kind = StmtKind::Measure;
        st.qubits.push_back(parse_qubit(rest.substr(0, arrow), line));
        st.creg = trim(rest.substr(arrow + 2));
        if (!is_identifier(st.creg)) {
            throw ParseError(line, "bad classical register '" + st.creg + "'");
        }
        return st;
    }

    const GateInfo* g = find_gate(word);
    if (!g) {
        throw ParseError(line, "unknown mnemonic '" + word + "'");
    }
    std::string operands = rest;
    if (g->has_angle) {
        if (operands.empty() || operands[0] != '(') {
            throw ParseError(line, std::string(g->name) + " needs a parenthesised argument");
        }
        int depth = 0;
        std::size_t close = std::string::npos;
        for (std::size_t k = 0; k < operands.size(); ++k) {
            depth += operands[k] == '(' ? 1 : operands[k] == ')' ? -1 : 0;
            if (depth == 0) {
                close = k;
                break;
            }
        }
        if (close == std::string::npos) {
            throw ParseError(line, "missing ')' in angle expression");
        }
        st.angle = ExprParser(operands.substr(1, close - 1), line).parse();
        operands = trim(operands.substr(close + 1));
    } else if (!operands.empty() && operands[0] == '(') {
        throw ParseError(line, std::string(g->name) + " takes no argument");
    }
    const auto qs = split_commas(operands);
    if (qs.size() != g->n_qubits) {
        throw ParseError(line, std::string(g->name) + " expects " + std::to_string(g->n_qubits) + " qubit(s)");
    }
    for (const auto& q : qs) {
        st.qubits.push_back(parse_qubit(q, line));
    }
    if (st.qubits.size() == 2 && st.qubits[0] == st.qubits[1]) {
        throw ParseError(line, "two-qubit gate on a single qubit");
    }
    st.kind = word == "id" ? StmtKind::Id : StmtKind::Gate;
    st.name = word == "cnot" ? "cx" : word;
    return st;
}

}  // namespace

double eval_angle(const std::string& expr) { return ExprParser(expr, 0).parse(); }

std::vector<AsmStatement> parse_asm(const std::string& text) {
    std::vector<AsmStatement> out;
    std::string pending;
    int pending_line = 0;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::size_t k = 0;
        while (k < line.size()) {
            const char c = line[k];
            if (c == ';') {
                const std::string body = trim(pending);
                if (body.empty()) {
                    throw ParseError(line_no, "empty statement");
                }
                out.push_back(parse_statement(body, pending_line));
                pending.clear();
            } else if (c == ':' && is_identifier(trim(pending))) {
                AsmStatement st;
                st.kind = StmtKind::Label;
                st.name = trim(pending);
                st.line = pending_line;
                out.push_back(st);
                pending.clear();
            } else {
                if (trim(pending).empty() && !std::isspace(static_cast<unsigned char>(c))) {
                    pending_line = line_no;
                }
                pending.push_back(c);
            }
            ++k;
        }
        pending.push_back(' ');
    }
    if (!trim(pending).empty()) {
        throw ParseError(pending_line, "statement missing ';'");
    }
    if (out.empty()) {
        throw ParseError(1, "empty program");
    }

    std::set<std::string> labels;
    for (const auto& st : out) {
        if (st.kind == StmtKind::Label && !labels.insert(st.name).second) {
            throw ParseError(st.line, "duplicate label '" + st.name + "'");
        }
    }
    for (const auto& st : out) {
        if ((st.kind == StmtKind::Bnz || st.kind == StmtKind::Goto) && !labels.count(st.name)) {
            throw ParseError(st.line, "undefined label '" + st.name + "'");
        }
    }
    return out;
}

}  // namespace dqc::sproc
