#include "pvkit/session.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "pvkit/basechange.hpp"
#include "pvkit/errors.hpp"
#include "pvkit/galois.hpp"

namespace pvkit {

namespace {

struct Tok {
    enum Kind { ident, number, punct, end } kind = end;
    std::string s;
    int col = 0;
};

std::vector<Tok> lex(const std::string& line, int lineno) {
    std::vector<Tok> out;
    std::size_t i = 0;
    auto fail = [&](const std::string& msg) {
        throw usage_error("line " + std::to_string(lineno) + ", col " + std::to_string(i + 1) +
                          ": " + msg);
    };
    while (i < line.size()) {
        char ch = line[i];
        if (ch == ' ' || ch == '\t' || ch == '\r') { ++i; continue; }
        if (ch == '#') break;
        Tok t;
        t.col = static_cast<int>(i + 1);
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            t.kind = Tok::ident;
            while (i < line.size() &&
                   (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_'))
                t.s += line[i++];
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            t.kind = Tok::number;
            while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i])))
                t.s += line[i++];
        } else if (std::string("()[],=:+-*/^").find(ch) != std::string::npos) {
            t.kind = Tok::punct;
            t.s = std::string(1, ch);
            ++i;
        } else {
            fail(std::string("unexpected character '") + ch + "'");
        }
        out.push_back(std::move(t));
    }
    out.push_back({Tok::end, "", static_cast<int>(line.size() + 1)});
    return out;
}

// a*y + b: all DSL expressions are parsed into this form, with a = 0 for
// plain rational-function expressions
struct LinExpr {
    RatFunc a, b;
};

class LineParser {
public:
    LineParser(const RingPtr& ring, std::vector<Tok> toks, int lineno)
        : ring_(ring), toks_(std::move(toks)), lineno_(lineno) {}

    const Tok& peek() const { return toks_[pos_]; }
    const Tok& peek_ahead(std::size_t k) const {
        return toks_[std::min(pos_ + k, toks_.size() - 1)];
    }
    bool at_end() const { return peek().kind == Tok::end; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw usage_error("line " + std::to_string(lineno_) + ", col " +
                          std::to_string(peek().col) + ": " + msg);
    }
    Tok take() { return toks_[pos_++]; }
    bool accept_punct(const std::string& p) {
        if (peek().kind == Tok::punct && peek().s == p) { ++pos_; return true; }
        return false;
    }
    void expect_punct(const std::string& p) {
        if (!accept_punct(p)) fail("expected '" + p + "'");
    }
    std::string expect_ident(const std::string& what) {
        if (peek().kind != Tok::ident) fail("expected " + what);
        return take().s;
    }
    Rat expect_rational() {
        bool neg = accept_punct("-");
        if (peek().kind != Tok::number) fail("expected a number");
        Int num(take().s);
        Int den(1);
        if (accept_punct("/")) {
            if (peek().kind != Tok::number) fail("malformed rational");
            den = Int(take().s);
            if (den == 0) fail("zero denominator");
        }
        Rat r(num, den);
        r.canonicalize();
        return neg ? Rat(-r) : r;
    }
    long expect_integer() {
        bool neg = accept_punct("-");
        if (peek().kind != Tok::number) fail("expected an integer");
        long v = std::stol(take().s);
        return neg ? -v : v;
    }

    // pure rational-function expression over the session ring
    RatFunc expr() {
        LinExpr e = lin_expr();
        if (!e.a.is_zero()) fail("y(x) is not allowed here");
        return e.b;
    }

    LinExpr lin_expr() {
        LinExpr e = lin_term();
        while (peek().kind == Tok::punct && (peek().s == "+" || peek().s == "-")) {
            bool plus = take().s == "+";
            LinExpr t = lin_term();
            e.a = plus ? e.a + t.a : e.a - t.a;
            e.b = plus ? e.b + t.b : e.b - t.b;
        }
        return e;
    }

private:
    LinExpr lin_term() {
        LinExpr e = lin_unary();
        while (peek().kind == Tok::punct && (peek().s == "*" || peek().s == "/")) {
            bool mul = take().s == "*";
            LinExpr t = lin_unary();
            if (!e.a.is_zero() && !t.a.is_zero()) fail("nonlinear use of y(x)");
            if (!mul) {
                if (!t.a.is_zero()) fail("division by y(x)");
                if (t.b.is_zero()) fail("division by zero");
                e.a = e.a / t.b;
                e.b = e.b / t.b;
            } else if (e.a.is_zero()) {
                e = {t.a * e.b, t.b * e.b};
            } else {
                e = {e.a * t.b, e.b * t.b};
            }
        }
        return e;
    }

    LinExpr lin_unary() {
        if (accept_punct("-")) {
            LinExpr e = lin_unary();
            return {-e.a, -e.b};
        }
        return lin_pow();
    }

    LinExpr lin_pow() {
        LinExpr e = atom();
        if (accept_punct("^")) {
            long p = expect_integer();
            if (!e.a.is_zero()) fail("cannot raise y(x) to a power");
            if (e.b.is_zero() && p < 0) fail("division by zero");
            e.b = e.b.pow(p);
        }
        return e;
    }

    LinExpr atom() {
        const FieldPtr& k = ring_->coefficient_field();
        RatFunc zero(k);
        if (accept_punct("(")) {
            LinExpr e = lin_expr();
            expect_punct(")");
            return e;
        }
        if (peek().kind == Tok::number)
            return {zero, RatFunc::constant(k->from_rational(Rat(Int(take().s), Int(1))))};
        if (peek().kind == Tok::ident) {
            std::string id = take().s;
            if (id == "x") return {zero, RatFunc::x(k)};
            if (id == "y") {
                expect_punct("(");
                std::string arg = expect_ident("x");
                if (arg != "x") fail("only y(x) may appear on the right-hand side");
                expect_punct(")");
                return {RatFunc::constant(k->one()), zero};
            }
            if (id == "q" && ring_->kind() == RingKind::q_dilation_field)
                return {zero, RatFunc::constant(k->from_rational(ring_->q()))};
            if (!k->is_rationals() && id == k->generator_name())
                return {zero, RatFunc::constant(k->generator())};
            fail("unknown identifier '" + id + "'");
        }
        fail("expected an expression");
    }

    RingPtr ring_;
    std::vector<Tok> toks_;
    int lineno_;
    std::size_t pos_ = 0;
};

FieldPtr parse_constants_field(LineParser& p) {
    std::string base = p.expect_ident("a field name");
    if (base != "Q") p.fail("unsupported field '" + base + "' (expected Q, Q(i), Q(zeta_n))");
    // Q(x) is the ring's variable part, not a field generator
    bool has_gen = p.peek().kind == Tok::punct && p.peek().s == "(" &&
                   p.peek_ahead(1).kind == Tok::ident && p.peek_ahead(1).s != "x";
    if (has_gen && p.accept_punct("(")) {
        std::string gen = p.expect_ident("a field generator");
        p.expect_punct(")");
        if (gen == "i") return ConstantsField::cyclotomic(4);
        if (gen.rfind("zeta_", 0) == 0) {
            long n = std::stol(gen.substr(5));
            if (n < 1) p.fail("bad cyclotomic order");
            return ConstantsField::cyclotomic(n);
        }
        p.fail("unsupported field generator '" + gen + "'");
    }
    return ConstantsField::rationals();
}

struct Session {
    RingPtr ring;
    std::map<std::string, DifferenceModule> modules;
    std::map<std::string, std::pair<RingElement, RingElement>> eqs; // tau(y) = a*y + b
    std::map<std::string, PVPtr> pvs;
    SessionOptions opt;

    void require_ring() const {
        if (!ring) throw usage_error("declare a ring first");
    }
    void check_fresh_name(const std::string& name) const {
        if (modules.count(name) || eqs.count(name))
            throw usage_error("name '" + name + "' is already in use");
    }
    const DifferenceModule& module(const std::string& name) const {
        auto it = modules.find(name);
        if (it == modules.end()) throw usage_error("unknown module '" + name + "'");
        return it->second;
    }
    // rebase everything after a constant extension
    void adopt(const ExtendedRing& ext) {
        std::map<std::string, DifferenceModule> moved;
        for (const auto& [name, m] : modules) {
            std::size_t n = static_cast<std::size_t>(m.rank());
            Mat<RingElement> sys(n, std::vector<RingElement>(n, ext.ring->zero()));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    sys[i][j] = base_extend(ext, m.system_matrix()[i][j]);
            moved.emplace(name, DifferenceModule::from_system_matrix(ext.ring, sys));
        }
        modules = std::move(moved);
        for (auto& [name, ab] : eqs)
            ab = {base_extend(ext, ab.first), base_extend(ext, ab.second)};
        pvs.clear(); // presentations over the old base are stale
        ring = ext.ring;
    }
    std::vector<RingElement> session_elements() const {
        std::vector<RingElement> out;
        for (const auto& [name, ab] : eqs) {
            out.push_back(ab.first);
            out.push_back(ab.second);
        }
        for (const auto& [name, m] : modules)
            for (const auto& row : m.system_matrix())
                for (const auto& e : row) out.push_back(e);
        return out;
    }
};

struct Report {
    nlohmann::json json;
    std::vector<std::string> text;
    std::vector<std::string> trace;
};

std::string group_desc(const DiagonalizableGroup& g) {
    if (g.is_trivial()) return "trivial";
    std::string out;
    for (long d : g.invariant_factors()) {
        if (!out.empty()) out += " x ";
        out += "mu_" + std::to_string(d);
    }
    if (g.torus_rank() > 0) {
        if (!out.empty()) out += " x ";
        out += "torus^" + std::to_string(g.torus_rank());
    }
    return out;
}

bool is_diagonal(const DifferenceModule& m) {
    for (int i = 0; i < m.rank(); ++i)
        for (int j = 0; j < m.rank(); ++j)
            if (i != j && !m.system_matrix()[i][j].is_zero()) return false;
    return true;
}

Report exec_line(Session& ses, LineParser& p) {
    Report rep;
    std::string head = p.expect_ident("a command");

    if (head == "ring") {
        std::string kind = p.expect_ident("a ring kind");
        if (kind == "shift" || kind == "qdil" || kind == "poly") {
            FieldPtr k = parse_constants_field(p);
            if (kind != "poly") {
                p.expect_punct("(");
                if (p.expect_ident("x") != "x") p.fail("expected (x)");
                p.expect_punct(")");
            } else {
                p.expect_punct("[");
                if (p.expect_ident("x") != "x") p.fail("expected [x]");
                p.expect_punct("]");
            }
            if (kind == "shift") {
                ses.ring = BaseDifferenceRing::shift_field(k);
            } else if (kind == "poly") {
                ses.ring = BaseDifferenceRing::shift_poly(k);
            } else {
                if (p.expect_ident("q") != "q") p.fail("expected q=<rational>");
                p.expect_punct("=");
                Rat q = p.expect_rational();
                if (q == 0 || q == 1 || q == -1)
                    throw domain_error("q must not be a root of unity");
                ses.ring = BaseDifferenceRing::q_dilation_field(k, q);
            }
        } else if (kind == "cyclic") {
            FieldPtr k = parse_constants_field(p);
            long n = p.expect_integer();
            if (n < 1) p.fail("cyclic size must be positive");
            ses.ring = BaseDifferenceRing::cyclic_product_cycle(k, static_cast<int>(n));
        } else {
            p.fail("unknown ring kind '" + kind + "'");
        }
        ses.modules.clear();
        ses.eqs.clear();
        ses.pvs.clear();
        rep.json["command"] = "ring";
        rep.json["ring"] = ses.ring->name();
        rep.text.push_back("ring: " + ses.ring->name());
        return rep;
    }

    ses.require_ring();

    if (head == "module") {
        if (!ses.ring->is_field()) throw domain_error("modules need a field base");
        std::string name = p.expect_ident("a module name");
        ses.check_fresh_name(name);
        p.expect_punct("=");
        p.expect_punct("[");
        Mat<RingElement> b;
        do {
            p.expect_punct("[");
            std::vector<RingElement> row;
            do row.push_back(ses.ring->from_rat_func(p.expr()));
            while (p.accept_punct(","));
            p.expect_punct("]");
            b.push_back(std::move(row));
        } while (p.accept_punct(","));
        p.expect_punct("]");
        for (const auto& row : b)
            if (row.size() != b.size()) p.fail("matrix is not square");
        auto m = DifferenceModule::from_system_matrix(ses.ring, b);
        ses.modules.emplace(name, m);
        rep.json["command"] = "module";
        rep.json["name"] = name;
        rep.json["rank"] = m.rank();
        nlohmann::json sysj = nlohmann::json::array();
        for (int i = 0; i < m.rank(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int j = 0; j < m.rank(); ++j) row.push_back(m.system_matrix()[i][j].to_string());
            sysj.push_back(row);
        }
        rep.json["system_matrix"] = sysj;
        rep.text.push_back("module " + name + ": rank " + std::to_string(m.rank()));
        // internal basis form, for the curious
        for (int i = 0; i < m.rank(); ++i) {
            std::string row = "A[" + std::to_string(i) + "] =";
            for (int j = 0; j < m.rank(); ++j) row += " " + m.tau_matrix()[i][j].to_string();
            rep.trace.push_back(row);
        }
        return rep;
    }

    if (head == "eq") {
        if (!ses.ring->is_field()) throw domain_error("equations need a field base");
        std::string name = p.expect_ident("an equation name");
        ses.check_fresh_name(name);
        p.expect_punct(":");
        if (p.expect_ident("y") != "y") p.fail("expected y(...)");
        p.expect_punct("(");
        RatFunc arg = p.expr();
        p.expect_punct(")");
        const FieldPtr& k = ses.ring->coefficient_field();
        RatFunc expected = ses.ring->kind() == RingKind::shift_field
                               ? RatFunc::x(k) + RatFunc::constant(k->one())
                               : RatFunc::x(k) * RatFunc::constant(k->from_rational(ses.ring->q()));
        if (arg != expected)
            p.fail(ses.ring->kind() == RingKind::shift_field ? "left side must be y(x+1)"
                                                             : "left side must be y(q*x)");
        p.expect_punct("=");
        LinExpr rhs = p.lin_expr();
        if (rhs.a.is_zero()) p.fail("right side must involve y(x)");
        RingElement a = ses.ring->from_rat_func(rhs.a);
        RingElement b = ses.ring->from_rat_func(rhs.b);
        ses.eqs.emplace(name, std::make_pair(a, b));
        if (b.is_zero()) {
            // rank-1 module with system scalar a
            Mat<RingElement> sys(1, std::vector<RingElement>(1, a));
            ses.modules.emplace(name, DifferenceModule::from_system_matrix(ses.ring, sys));
        }
        rep.json["command"] = "eq";
        rep.json["name"] = name;
        rep.json["a"] = a.to_string();
        rep.json["b"] = b.to_string();
        rep.text.push_back("eq " + name + ": tau(y) = (" + a.to_string() + ")*y + (" +
                           b.to_string() + ")");
        return rep;
    }

    if (head == "constants") {
        ConstantsInfo ci = constants_of(ses.ring);
        rep.json["command"] = "constants";
        rep.json["field"] = ci.field->name();
        rep.text.push_back("constants: " + ci.field->name());
        rep.trace.push_back(ci.certificate);
        return rep;
    }

    if (head == "solve") {
        std::string name = p.expect_ident("an equation name");
        auto it = ses.eqs.find(name);
        if (it == ses.eqs.end()) throw usage_error("unknown equation '" + name + "'");
        auto sol = scalar_rational_solutions(ses.ring, it->second.first, it->second.second,
                                             ses.opt.degree_cap);
        rep.json["command"] = "solve";
        rep.json["name"] = name;
        rep.json["particular"] =
            sol.particular ? nlohmann::json(sol.particular->to_string()) : nlohmann::json();
        nlohmann::json hom = nlohmann::json::array();
        for (const auto& h : sol.homogeneous) hom.push_back(h.to_string());
        rep.json["homogeneous"] = hom;
        rep.text.push_back("solve " + name + ": particular " +
                           (sol.particular ? sol.particular->to_string() : "none") + ", " +
                           std::to_string(sol.homogeneous.size()) + " homogeneous");
        for (const auto& h : sol.homogeneous) rep.text.push_back("  basis: " + h.to_string());
        return rep;
    }

    if (head == "group") {
        std::string name = p.expect_ident("a module name");
        const DifferenceModule& m = ses.module(name);
        DiagonalizableGroup g = is_diagonal(m)
                                    ? galois_group(m)
                                    : galois_group(split_and_analyze(m).diagonal);
        rep.json = group_to_json(g);
        rep.json["command"] = "group";
        rep.json["name"] = name;
        rep.text.push_back("Galois group: " + group_desc(g));
        rep.trace.push_back("character group Z^" + std::to_string(g.character_rank) +
                            " / L with " + std::to_string(g.lattice.rank()) +
                            " lattice generators");
        return rep;
    }

    if (head == "pv") {
        std::string name = p.expect_ident("a module name");
        PVPtr s = construct_pv(ses.module(name));
        ses.pvs[name] = s;
        rep.json["command"] = "pv";
        rep.json["name"] = name;
        rep.json["presentation"] = pv_to_json(s);
        rep.text.push_back("PV ring over " + s->base->name() + " with " +
                           std::to_string(s->tau_scalars.size()) + " generators, " +
                           std::to_string(s->relations.size()) + " torsion relations");
        for (const auto& rel : s->relations) {
            std::string lam;
            for (std::size_t i = 0; i < rel.lambda.size(); ++i)
                lam += (i ? "," : "") + rel.lambda[i].get_str();
            rep.text.push_back("  t^(" + lam + ") = " + rel.witness.to_string());
        }
        return rep;
    }

    if (head == "verify") {
        std::string name = p.expect_ident("a module name");
        auto it = ses.pvs.find(name);
        if (it == ses.pvs.end()) throw usage_error("run 'pv " + name + "' first");
        PVReport vr = verify_pv(it->second, ses.module(name));
        rep.json["command"] = "verify";
        rep.json["name"] = name;
        nlohmann::json conds;
        const char* labels[] = {"a", "b", "c", "d", "e"};
        const PVCondition* cs[] = {&vr.a, &vr.b, &vr.c, &vr.d, &vr.e};
        for (int i = 0; i < 5; ++i) {
            conds[labels[i]] = cs[i]->pass ? "pass" : "fail";
            rep.text.push_back(std::string("(") + labels[i] + ") " +
                               (cs[i]->pass ? "pass" : "fail"));
            for (const auto& note : cs[i]->notes) rep.trace.push_back(note);
        }
        rep.json["conditions"] = conds;
        return rep;
    }

    if (head == "descend") {
        std::string name = p.expect_ident("a module name");
        auto it = ses.pvs.find(name);
        if (it == ses.pvs.end()) throw usage_error("run 'pv " + name + "' first");
        if (p.expect_ident("chi") != "chi") p.fail("expected chi=(...)");
        p.expect_punct("=");
        p.expect_punct("(");
        IVec chi;
        do chi.emplace_back(p.expect_integer());
        while (p.accept_punct(","));
        p.expect_punct(")");
        DifferenceModule d = descend(chi, it->second);
        rep.json["command"] = "descend";
        rep.json["name"] = name;
        nlohmann::json cj = nlohmann::json::array();
        for (const auto& c : chi) cj.push_back(static_cast<long>(c.get_si()));
        rep.json["chi"] = cj;
        rep.json["system_scalar"] = d.system_matrix()[0][0].to_string();
        rep.text.push_back("descend: M_(" + d.system_matrix()[0][0].to_string() + ")");
        return rep;
    }

    if (head == "universal") {
        std::vector<std::string> names;
        std::vector<DifferenceModule> mods;
        while (!p.at_end()) {
            names.push_back(p.expect_ident("a module name"));
            mods.push_back(ses.module(names.back()));
        }
        if (mods.empty()) p.fail("expected at least one module");
        PVPtr s = universal_pv(mods);
        ses.pvs["universal"] = s;
        rep.json["command"] = "universal";
        rep.json["modules"] = names;
        rep.json["presentation"] = pv_to_json(s);
        DiagonalizableGroup g = galois_group(s);
        rep.json["group"] = group_to_json(g);
        rep.text.push_back("universal PV ring: group " + group_desc(g));
        return rep;
    }

    if (head == "basechange") {
        FieldPtr k = parse_constants_field(p);
        ExtendedRing ext = extend_constants(ses.ring, k);
        CommutationReport cr = galois_commutation_check(ext, ses.opt.seed,
                                                        ses.session_elements());
        ses.adopt(ext);
        rep.json["command"] = "basechange";
        rep.json["field"] = k->name();
        rep.json["min_poly"] = k->minimal_polynomial().to_string("y");
        rep.json["automorphisms"] = cr.automorphisms;
        rep.json["commutes"] = cr.pass;
        rep.text.push_back("base change to " + ses.ring->name() + ": tau commutes with Gal(" +
                           k->name() + "/Q)");
        for (const auto& line : cr.trace) rep.trace.push_back(line);
        return rep;
    }

    if (head == "split") {
        std::string name = p.expect_ident("a module name");
        SplitResult res = split_and_analyze(ses.module(name));
        ses.adopt(res.extended);
        std::string dname = name + "_split";
        ses.modules.erase(dname);
        ses.modules.emplace(dname, res.diagonal);
        rep.json["command"] = "split";
        rep.json["name"] = name;
        rep.json["field"] = res.constants->name();
        rep.json["min_poly"] = res.extension_min_poly.to_string("y");
        nlohmann::json ev = nlohmann::json::array();
        for (const auto& l : res.eigenvalues) ev.push_back(l.to_string());
        rep.json["eigenvalues"] = ev;
        rep.json["diagonal"] = dname;
        rep.text.push_back("split " + name + " over " + res.constants->name() + ": diagonal " +
                           dname);
        for (const auto& line : res.report) rep.trace.push_back(line);
        return rep;
    }

    if (head == "fractions") {
        TotalFractionsResult res = total_fractions_check(ses.ring);
        rep.json["command"] = "fractions";
        rep.json["ring"] = res.s->name();
        rep.json["report"] = res.report;
        rep.text.push_back("total fractions: " + res.s->name());
        for (const auto& line : res.report) rep.trace.push_back(line);
        return rep;
    }

    if (head == "simple") {
        SimplicityCertificate cert = simplicity_certificate(ses.ring);
        rep.json["command"] = "simple";
        rep.json["verdict"] = cert.verdict == SimplicityVerdict::simple      ? "simple"
                              : cert.verdict == SimplicityVerdict::not_simple ? "not simple"
                                                                              : "unknown";
        rep.text.push_back("simplicity: " + rep.json["verdict"].get<std::string>());
        for (const auto& line : cert.trace) rep.trace.push_back(line);
        return rep;
    }

    p.fail("unknown command '" + head + "'");
}

} // namespace

RunResult run_program(const std::string& text, const SessionOptions& opt) {
    RunResult res;
    Session ses;
    ses.opt = opt;
    nlohmann::json out = nlohmann::json::array();
    std::ostringstream text_out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    try {
        while (std::getline(in, line)) {
            ++lineno;
            std::vector<Tok> toks = lex(line, lineno);
            if (toks.size() == 1) continue; // blank or comment
            LineParser p(ses.ring ? ses.ring : BaseDifferenceRing::shift_field(
                                                   ConstantsField::rationals()),
                         toks, lineno);
            Report rep = exec_line(ses, p);
            if (!p.at_end()) p.fail("trailing input");
            if (opt.json) {
                out.push_back(rep.json);
            } else {
                for (const auto& l : rep.text) text_out << l << "\n";
                if (opt.trace)
                    for (const auto& l : rep.trace) text_out << "  | " << l << "\n";
            }
        }
    } catch (const usage_error& e) {
        res.exit_code = 1;
        res.diagnostics = std::string("usage error: ") + e.what() + "\n";
        return res;
    } catch (const domain_error& e) {
        res.exit_code = 2;
        res.diagnostics = std::string("domain error: ") + e.what() + "\n";
        return res;
    } catch (const internal_error& e) {
        res.exit_code = 2;
        res.diagnostics = std::string("internal error: ") + e.what() + "\n";
        return res;
    }
    res.output = opt.json ? out.dump(2) + "\n" : text_out.str();
    return res;
}

} // namespace pvkit
