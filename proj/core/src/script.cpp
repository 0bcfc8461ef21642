#include "geoelim/script.hpp"

#include "geoelim/errors.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <string>

namespace geoelim::dsl {

using construction::Hint;
using construction::LinearCombo;
using construction::ObjectKind;
using construction::Step;
using construction::StepKind;
using exactmath::Rational;

namespace {

struct Token {
    enum class Type { Ident, Number, Symbol, End };
    Type type = Type::End;
    std::string text;
    int column = 0;
};

struct LineLexer {
    std::string line;
    int line_no;
    std::size_t pos = 0;
    Token current;

    LineLexer(std::string l, int n) : line(std::move(l)), line_no(n) { advance(); }

    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError("expected " + expected +
                             (current.type == Token::Type::End ? " at end of line"
                                                               : ", got '" + current.text + "'"),
                         line_no, current.column);
    }

    void advance() {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        current.column = static_cast<int>(pos) + 1;
        if (pos >= line.size() || line[pos] == '#') {
            current = {Token::Type::End, "", current.column};
            return;
        }
        char c = line[pos];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < line.size() && (std::isalnum(static_cast<unsigned char>(line[pos])) ||
                                         line[pos] == '_' || line[pos] == '\''))
                ++pos;
            current.type = Token::Type::Ident;
            current.text = line.substr(start, pos - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < line.size() && (std::isdigit(static_cast<unsigned char>(line[pos])) ||
                                         line[pos] == '.'))
                ++pos;
            current.type = Token::Type::Number;
            current.text = line.substr(start, pos - start);
            return;
        }
        current.type = Token::Type::Symbol;
        current.text = std::string(1, c);
        ++pos;
    }

    bool at(Token::Type t, const std::string& text = "") const {
        return current.type == t && (text.empty() || current.text == text);
    }
    bool accept_symbol(const std::string& s) {
        if (at(Token::Type::Symbol, s)) {
            advance();
            return true;
        }
        return false;
    }
    void expect_symbol(const std::string& s) {
        if (!accept_symbol(s)) fail("'" + s + "'");
    }
    std::string expect_ident(const std::string& what) {
        if (!at(Token::Type::Ident)) fail(what);
        std::string t = current.text;
        advance();
        return t;
    }
    bool at_end() const { return current.type == Token::Type::End; }
};

struct Parser {
    Script script;
    std::map<std::string, ObjectKind> kinds;

    ObjectKind kind_of(LineLexer& lx, const std::string& label, int col) const {
        auto it = kinds.find(label);
        if (it == kinds.end())
            throw ParseError("undefined label '" + label + "'", lx.line_no, col);
        return it->second;
    }

    std::string expect_label(LineLexer& lx, ObjectKind kind, const std::string& what) {
        int col = lx.current.column;
        std::string label = lx.expect_ident(what + " label");
        if (kind_of(lx, label, col) != kind)
            throw ParseError("label '" + label + "' is not a " + what, lx.line_no, col);
        return label;
    }

    void define(LineLexer& lx, const std::string& label, ObjectKind kind, int col) {
        if (kinds.count(label))
            throw ParseError("duplicate label '" + label + "'", lx.line_no, col);
        kinds.emplace(label, kind);
    }

    Rational parse_rational(LineLexer& lx) {
        bool neg = lx.accept_symbol("-");
        if (!lx.at(Token::Type::Number)) lx.fail("a rational number");
        std::string num = lx.current.text;
        lx.advance();
        std::string text = num;
        if (lx.accept_symbol("/")) {
            if (!lx.at(Token::Type::Number)) lx.fail("a denominator");
            text += "/" + lx.current.text;
            lx.advance();
        }
        auto value = exactmath::parse_rational(text);
        if (!value) lx.fail("a rational number");
        return neg ? Rational(-*value) : *value;
    }

    double parse_float(LineLexer& lx) {
        bool neg = lx.accept_symbol("-");
        if (!lx.at(Token::Type::Number)) lx.fail("a coordinate");
        // round-to-nearest so 17-digit hint text round-trips exactly
        std::size_t used = 0;
        double d = 0;
        try {
            d = std::stod(lx.current.text, &used);
        } catch (const std::exception&) {
            lx.fail("a coordinate");
        }
        if (used != lx.current.text.size()) lx.fail("a coordinate");
        lx.advance();
        return neg ? -d : d;
    }

    Hint parse_hint(LineLexer& lx) {
        lx.expect_symbol("(");
        double x = parse_float(lx);
        lx.expect_symbol(",");
        double y = parse_float(lx);
        lx.expect_symbol(")");
        return Hint{x, y};
    }

    locus::RatioTarget parse_target(LineLexer& lx) {
        if (lx.at(Token::Type::Ident, "sqrt")) {
            lx.advance();
            lx.expect_symbol("(");
            Rational rad = parse_rational(lx);
            lx.expect_symbol(")");
            Rational scale(1);
            if (lx.accept_symbol("/")) scale = 1 / parse_rational(lx);
            if (rad.get_den() != 1 || exactmath::sign(rad) <= 0)
                lx.fail("a positive integer radicand");
            return locus::SurdTarget{scale, rad.get_num().get_si()};
        }
        Rational r = parse_rational(lx);
        if (lx.accept_symbol("*")) {
            if (!lx.at(Token::Type::Ident, "sqrt")) lx.fail("'sqrt'");
            lx.advance();
            lx.expect_symbol("(");
            Rational rad = parse_rational(lx);
            lx.expect_symbol(")");
            Rational scale = r;
            if (lx.accept_symbol("/")) scale /= parse_rational(lx);
            if (rad.get_den() != 1 || exactmath::sign(rad) <= 0)
                lx.fail("a positive integer radicand");
            return locus::SurdTarget{scale, rad.get_num().get_si()};
        }
        return r;
    }

    void parse_query(LineLexer& lx, int line_no) {
        std::string name = lx.expect_ident("'Relation' or 'Locus'");
        if (name == "Relation") {
            lx.expect_symbol("(");
            std::string left = expect_label(lx, ObjectKind::Value, "length or number");
            lx.expect_symbol(",");
            std::string right = expect_label(lx, ObjectKind::Value, "length or number");
            lx.expect_symbol(")");
            script.queries.push_back({prover::RelationQuery{left, right}, line_no});
        } else if (name == "Locus") {
            lx.expect_symbol("(");
            std::string cond_name = lx.expect_ident("'Collinear', 'RatioEq' or 'LengthEq'");
            locus::LocusCondition condition;
            lx.expect_symbol("(");
            if (cond_name == "Collinear") {
                std::string p = expect_label(lx, ObjectKind::Point, "point");
                lx.expect_symbol(",");
                std::string q = expect_label(lx, ObjectKind::Point, "point");
                lx.expect_symbol(",");
                std::string r = expect_label(lx, ObjectKind::Point, "point");
                condition = locus::Collinear{p, q, r};
            } else if (cond_name == "RatioEq") {
                std::string a = expect_label(lx, ObjectKind::Value, "length");
                lx.expect_symbol(",");
                std::string b = expect_label(lx, ObjectKind::Value, "length");
                lx.expect_symbol(",");
                condition = locus::RatioEq{a, b, parse_target(lx)};
            } else if (cond_name == "LengthEq") {
                std::string a = expect_label(lx, ObjectKind::Value, "length");
                lx.expect_symbol(",");
                std::string b = expect_label(lx, ObjectKind::Value, "length");
                condition = locus::LengthEq{a, b};
            } else {
                throw ParseError("unknown locus condition '" + cond_name + "'", line_no,
                                 lx.current.column);
            }
            lx.expect_symbol(")");
            lx.expect_symbol(",");
            std::string traced = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(")");
            script.queries.push_back({LocusQuery{condition, traced}, line_no});
        } else {
            throw ParseError("unknown query '" + name + "'", line_no, 1);
        }
        if (!lx.at_end()) lx.fail("end of line");
    }

    // One `label [, label] = ...` statement.
    void parse_statement(LineLexer& lx) {
        int first_col = lx.current.column;
        std::string out1 = lx.expect_ident("a label");
        std::string out2;
        if (lx.accept_symbol(",")) out2 = lx.expect_ident("a second label");
        lx.expect_symbol("=");

        // Look ahead: an identifier directly followed by '(' is a command,
        // everything else is a number expression.
        if (lx.at(Token::Type::Ident)) {
            std::size_t after = lx.pos;
            while (after < lx.line.size() &&
                   std::isspace(static_cast<unsigned char>(lx.line[after])))
                ++after;
            if (after < lx.line.size() && lx.line[after] == '(') {
                parse_command(lx, out1, out2, first_col);
                if (!lx.at_end()) lx.fail("end of line");
                return;
            }
        }
        if (!out2.empty())
            throw ParseError("only Square produces two labels", lx.line_no, first_col);
        parse_num_expr(lx, out1, first_col);
        if (!lx.at_end()) lx.fail("end of line");
    }

    void parse_command(LineLexer& lx, const std::string& out1, const std::string& out2,
                       int first_col) {
        int cmd_col = lx.current.column;
        std::string cmd = lx.expect_ident("a command");
        lx.expect_symbol("(");
        auto& prog = script.program;

        if (!out2.empty() && cmd != "Square")
            throw ParseError("only Square produces two labels", lx.line_no, first_col);

        if (cmd == "FreePoint") {
            lx.expect_symbol(")");
            std::optional<Hint> hint;
            if (lx.accept_symbol("@")) hint = parse_hint(lx);
            prog.add_free_point(out1, hint);
            define(lx, out1, ObjectKind::Point, first_col);
        } else if (cmd == "Midpoint") {
            std::string p = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(",");
            std::string q = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(")");
            prog.add_midpoint(out1, p, q);
            define(lx, out1, ObjectKind::Point, first_col);
        } else if (cmd == "Reflect") {
            std::string p = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(",");
            int col = lx.current.column;
            std::string about = lx.expect_ident("a point or line label");
            ObjectKind k = kind_of(lx, about, col);
            lx.expect_symbol(")");
            if (k == ObjectKind::Point)
                prog.add_reflect_point(out1, p, about);
            else if (k == ObjectKind::Line)
                prog.add_reflect_about_line(out1, p, about);
            else
                throw ParseError("Reflect mirrors at a point or a line", lx.line_no, col);
            define(lx, out1, ObjectKind::Point, first_col);
        } else if (cmd == "Dilate") {
            std::string p = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(",");
            Rational factor = parse_rational(lx);
            lx.expect_symbol(",");
            std::string c = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(")");
            prog.add_dilate(out1, p, factor, c);
            define(lx, out1, ObjectKind::Point, first_col);
        } else if (cmd == "Line") {
            std::string p = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(",");
            std::string q = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(")");
            prog.add_line(out1, p, q);
            define(lx, out1, ObjectKind::Line, first_col);
        } else if (cmd == "PerpBisector") {
            std::string p = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(",");
            std::string q = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(")");
            prog.add_perpendicular_bisector(out1, p, q);
            define(lx, out1, ObjectKind::Line, first_col);
        } else if (cmd == "Perpendicular") {
            std::string p = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(",");
            std::string l = expect_label(lx, ObjectKind::Line, "line");
            lx.expect_symbol(")");
            prog.add_perpendicular_through(out1, p, l);
            define(lx, out1, ObjectKind::Line, first_col);
        } else if (cmd == "Circle") {
            std::string c = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(",");
            std::string t = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(")");
            prog.add_circle(out1, c, t);
            define(lx, out1, ObjectKind::Circle, first_col);
        } else if (cmd == "Intersect") {
            int col_a = lx.current.column;
            std::string a = lx.expect_ident("a line or circle label");
            ObjectKind ka = kind_of(lx, a, col_a);
            lx.expect_symbol(",");
            int col_b = lx.current.column;
            std::string b = lx.expect_ident("a line or circle label");
            ObjectKind kb = kind_of(lx, b, col_b);
            lx.expect_symbol(")");
            if ((ka != ObjectKind::Line && ka != ObjectKind::Circle) ||
                (kb != ObjectKind::Line && kb != ObjectKind::Circle))
                throw ParseError("Intersect takes lines or circles", lx.line_no, col_a);
            std::optional<Hint> hint;
            if (lx.at(Token::Type::Ident, "near")) {
                lx.advance();
                hint = parse_hint(lx);
            }
            bool quadratic = !(ka == ObjectKind::Line && kb == ObjectKind::Line);
            if (quadratic && !hint)
                throw ParseError("this intersection has two branches; add 'near (x, y)'",
                                 lx.line_no, cmd_col);
            prog.add_intersect(out1, a, b, hint);
            define(lx, out1, ObjectKind::Point, first_col);
        } else if (cmd == "Square") {
            if (out2.empty())
                throw ParseError("Square produces two labels: 'C, D = Square(A, B)'", lx.line_no,
                                 first_col);
            std::string a = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(",");
            std::string b = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(")");
            prog.add_square(out1, out2, a, b);
            define(lx, out1, ObjectKind::Point, first_col);
            define(lx, out2, ObjectKind::Point, first_col);
        } else if (cmd == "Equilateral") {
            std::string a = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(",");
            std::string b = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(")");
            if (!lx.at(Token::Type::Ident, "near"))
                throw ParseError("Equilateral has two branches; add 'near (x, y)'", lx.line_no,
                                 cmd_col);
            lx.advance();
            Hint hint = parse_hint(lx);
            prog.add_equilateral_vertex(out1, a, b, hint);
            define(lx, out1, ObjectKind::Point, first_col);
        } else if (cmd == "Segment") {
            std::string p = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(",");
            std::string q = expect_label(lx, ObjectKind::Point, "point");
            lx.expect_symbol(")");
            prog.add_segment_length(out1, p, q);
            define(lx, out1, ObjectKind::Value, first_col);
        } else {
            throw ParseError("unknown command '" + cmd + "'", lx.line_no, cmd_col);
        }
    }

    void parse_num_expr(LineLexer& lx, const std::string& out, int first_col) {
        LinearCombo combo;
        bool first = true;
        while (true) {
            int sgn = 1;
            if (lx.accept_symbol("-"))
                sgn = -1;
            else if (lx.accept_symbol("+"))
                sgn = 1;
            else if (!first)
                break;
            if (lx.at(Token::Type::Number)) {
                Rational coef = parse_rational(lx);
                if (sgn < 0) coef = -coef;
                if (lx.accept_symbol("*")) {
                    std::string label = expect_label(lx, ObjectKind::Value, "length or number");
                    combo.terms.push_back({coef, label});
                } else {
                    combo.constant += coef;
                }
            } else if (lx.at(Token::Type::Ident)) {
                std::string label = expect_label(lx, ObjectKind::Value, "length or number");
                combo.terms.push_back({Rational(sgn), label});
            } else {
                lx.fail("a number expression");
            }
            first = false;
            if (lx.at_end()) break;
        }
        if (combo.terms.empty() && !first)
            throw ParseError("number expression must reference at least one length", lx.line_no,
                             first_col);
        script.program.add_num_expr(out, std::move(combo));
        define(lx, out, ObjectKind::Value, first_col);
    }
};

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    std::size_t b = s.find_last_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

} // namespace

Script parse_script(const std::string& text) {
    Parser parser;
    parser.script.source = text;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t.rfind("#!", 0) == 0) {
            std::string directive = trim(t.substr(2));
            auto colon = directive.find(':');
            if (colon != std::string::npos) {
                std::string key = trim(directive.substr(0, colon));
                std::string value = trim(directive.substr(colon + 1));
                if (key == "id") parser.script.problem_id = value;
            }
            continue;
        }
        if (t[0] == '#') continue;
        LineLexer lx(line, line_no);
        if (lx.at_end()) continue;
        if (lx.accept_symbol("?")) {
            parser.parse_query(lx, line_no);
        } else {
            parser.parse_statement(lx);
        }
    }
    parser.script.program.validate();
    return parser.script;
}

namespace {

std::string hint_to_string(const Hint& h) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(%.17g, %.17g)", h.x, h.y);
    return buf;
}

std::string combo_to_string(const LinearCombo& combo) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [coef, label] : combo.terms) {
        Rational a = coef;
        if (first) {
            if (exactmath::sign(a) < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (exactmath::sign(a) < 0 ? " - " : " + ");
            a = abs(a);
        }
        first = false;
        if (a != 1) out << exactmath::to_string(a) << "*";
        out << label;
    }
    if (exactmath::sign(combo.constant) != 0) {
        Rational c = combo.constant;
        out << (exactmath::sign(c) < 0 ? " - " : " + ");
        out << exactmath::to_string(abs(c));
    }
    return out.str();
}

} // namespace

std::string condition_to_string(const locus::LocusCondition& condition) {
    if (const auto* c = std::get_if<locus::Collinear>(&condition))
        return "Collinear(" + c->p + ", " + c->q + ", " + c->r + ")";
    if (const auto* r = std::get_if<locus::RatioEq>(&condition))
        return "RatioEq(" + r->len_a + ", " + r->len_b + ", " +
               ratio_target_to_string(r->target) + ")";
    const auto& e = std::get<locus::LengthEq>(condition);
    return "LengthEq(" + e.len_a + ", " + e.len_b + ")";
}

std::string unparse(const Script& script) {
    std::ostringstream out;
    if (!script.problem_id.empty()) out << "#! id: " << script.problem_id << "\n";
    for (const auto& s : script.program.steps()) {
        switch (s.kind) {
        case StepKind::FreePoint:
            out << s.outputs[0] << " = FreePoint()";
            if (s.hint) out << " @ " << hint_to_string(*s.hint);
            break;
        case StepKind::Midpoint:
            out << s.outputs[0] << " = Midpoint(" << s.inputs[0] << ", " << s.inputs[1] << ")";
            break;
        case StepKind::ReflectPoint:
        case StepKind::ReflectAboutLine:
            out << s.outputs[0] << " = Reflect(" << s.inputs[0] << ", " << s.inputs[1] << ")";
            break;
        case StepKind::Dilate:
            out << s.outputs[0] << " = Dilate(" << s.inputs[0] << ", "
                << exactmath::to_string(*s.factor) << ", " << s.inputs[1] << ")";
            break;
        case StepKind::LineTwoPoints:
            out << s.outputs[0] << " = Line(" << s.inputs[0] << ", " << s.inputs[1] << ")";
            break;
        case StepKind::PerpendicularBisector:
            out << s.outputs[0] << " = PerpBisector(" << s.inputs[0] << ", " << s.inputs[1] << ")";
            break;
        case StepKind::PerpendicularThrough:
            out << s.outputs[0] << " = Perpendicular(" << s.inputs[0] << ", " << s.inputs[1]
                << ")";
            break;
        case StepKind::CircleCenterThrough:
            out << s.outputs[0] << " = Circle(" << s.inputs[0] << ", " << s.inputs[1] << ")";
            break;
        case StepKind::IntersectLineLine:
        case StepKind::IntersectLineCircle:
        case StepKind::IntersectCircleCircle:
            out << s.outputs[0] << " = Intersect(" << s.inputs[0] << ", " << s.inputs[1] << ")";
            if (s.hint) out << " near " << hint_to_string(*s.hint);
            break;
        case StepKind::Square:
            out << s.outputs[0] << ", " << s.outputs[1] << " = Square(" << s.inputs[0] << ", "
                << s.inputs[1] << ")";
            break;
        case StepKind::EquilateralVertex:
            out << s.outputs[0] << " = Equilateral(" << s.inputs[0] << ", " << s.inputs[1] << ")";
            if (s.hint) out << " near " << hint_to_string(*s.hint);
            break;
        case StepKind::SegmentLength:
            out << s.outputs[0] << " = Segment(" << s.inputs[0] << ", " << s.inputs[1] << ")";
            break;
        case StepKind::NumExpr:
            out << s.outputs[0] << " = " << combo_to_string(*s.expr);
            break;
        }
        out << "\n";
    }
    for (const auto& q : script.queries) {
        if (const auto* rel = std::get_if<prover::RelationQuery>(&q.value)) {
            out << "? Relation(" << rel->left << ", " << rel->right << ")\n";
        } else {
            const auto& loc = std::get<LocusQuery>(q.value);
            out << "? Locus(" << condition_to_string(loc.condition) << ", " << loc.traced
                << ")\n";
        }
    }
    return out.str();
}

locus::RatioTarget parse_ratio_target(const std::string& text) {
    LineLexer lx(text, 1);
    Parser parser;
    auto target = parser.parse_target(lx);
    if (!lx.at_end())
        throw ParseError("trailing input after ratio target", 1, lx.current.column);
    return target;
}

std::string ratio_target_to_string(const locus::RatioTarget& target) {
    if (const auto* r = std::get_if<Rational>(&target)) return exactmath::to_string(*r);
    const auto& s = std::get<locus::SurdTarget>(target);
    std::ostringstream out;
    if (s.scale.get_num() != 1) out << s.scale.get_num().get_str() << "*";
    out << "sqrt(" << s.radicand << ")";
    if (s.scale.get_den() != 1) out << "/" << s.scale.get_den().get_str();
    return out.str();
}

} // namespace geoelim::dsl
