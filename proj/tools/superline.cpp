// Command-line front end: every operation reads a text document
// (declarations followed by key: value records) from a file or stdin and
// writes line-delimited records to stdout.  Exit codes: 0 success, 1
// mathematical error, 2 parse error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "superline/darboux.hpp"
#include "superline/kernel.hpp"
#include "superline/parsing.hpp"
#include "superline/printing.hpp"
#include "superline/supermatrix.hpp"
#include "superline/wronskian.hpp"

namespace {

using namespace superline;

struct Input {
    Session session;
    std::vector<std::pair<std::string, std::string>> records;

    const std::string& get(const std::string& key) const {
        for (const auto& [k, v] : records)
            if (k == key) return v;
        throw ParseError("missing input record '" + key + ":'", 1, 1);
    }
};

bool record_start(const std::string& line, std::string& key, std::string& rest) {
    size_t i = 0;
    while (i < line.size() &&
           (std::isalnum((unsigned char)line[i]) || line[i] == '_'))
        ++i;
    if (i == 0 || i >= line.size() || line[i] != ':') return false;
    if (!std::isalpha((unsigned char)line[0])) return false;
    key = line.substr(0, i);
    rest = line.substr(i + 1);
    return true;
}

Input read_input(const std::string& path) {
    std::vector<std::string> lines;
    std::string line;
    if (path.empty() || path == "-") {
        while (std::getline(std::cin, line)) lines.push_back(line);
    } else {
        std::ifstream f(path);
        if (!f) throw ParseError("cannot open input file " + path, 1, 1);
        while (std::getline(f, line)) lines.push_back(line);
    }
    Input in;
    if (const char* env = std::getenv("SUPERLINE_TRUNC")) {
        try {
            int t = std::stoi(env);
            if (t < 0) throw std::invalid_argument("negative");
            in.session.trunc = t;
        } catch (const std::exception&) {
            throw ParseError("SUPERLINE_TRUNC must be a nonnegative integer", 1, 1);
        }
    }
    size_t start = parse_declarations(lines, in.session);
    for (size_t i = start; i < lines.size(); ++i) {
        std::string key, rest;
        if (record_start(lines[i], key, rest)) {
            in.records.emplace_back(key, rest);
        } else {
            if (in.records.empty()) {
                std::string t = lines[i];
                if (t.find_first_not_of(" \t\r") == std::string::npos) continue;
                if (t[t.find_first_not_of(" \t\r")] == '#') continue;
                throw ParseError("expected a 'key: value' record", (int)i + 1, 1);
            }
            in.records.back().second += "\n" + lines[i];
        }
    }
    return in;
}

void emit(const std::string& key, const std::string& value) {
    std::cout << key << ": " << value << "\n";
}

void emit_scalar(const std::string& key, const Scalar& v, const NameTable& names) {
    emit(key, print_scalar(v, names));
    emit(key + "_parity", print_parity_class(parity_class(v)));
}

void emit_operator(const std::string& key, const SuperDiffOp& a,
                   const NameTable& names) {
    emit(key, print_operator(a, names));
    emit(key + "_order", std::to_string(a.order()));
}

bool op_is_zero(const SuperDiffOp& a) {
    for (int k = 0; k <= a.order(); ++k)
        if (!is_zero(a.coeff(k))) return false;
    return true;
}

int cmd_compose(const Input& in) {
    SuperDiffOp a = parse_operator(in.get("op"), in.session);
    NameTable names = in.session.names();
    emit("op", print_operator(a, names));
    emit("order", std::to_string(a.order()));
    emit("parity", a.parity() == Parity::Odd ? "odd" : "even");
    return 0;
}

int cmd_apply(const Input& in) {
    SuperDiffOp a = parse_operator(in.get("op"), in.session);
    Scalar f = parse_scalar(in.get("f"), in.session);
    emit_scalar("result", a.apply(f), in.session.names());
    return 0;
}

int cmd_divide(const Input& in, const std::string& side) {
    SuperDiffOp n = parse_operator(in.get("n"), in.session);
    SuperDiffOp m = parse_operator(in.get("m"), in.session);
    DivisionResult d = side == "left" ? divide_left(n, m, in.session.trunc)
                                      : divide_right(n, m, in.session.trunc);
    NameTable names = in.session.names();
    emit_operator("quotient", d.quotient, names);
    emit_operator("remainder", d.remainder, names);
    return 0;
}

int cmd_ber(const Input& in, bool star) {
    FormatMatrix a = parse_matrix(in.get("matrix"), in.session);
    Scalar b = star ? berezinian_star(a, in.session.trunc)
                    : berezinian(a, in.session.trunc);
    emit_scalar(star ? "ber_star" : "ber", b, in.session.names());
    return 0;
}

int cmd_cofactor(const Input& in, int i, int j) {
    FormatMatrix a = parse_matrix(in.get("matrix"), in.session);
    if (i < 0 || i >= a.rows() || j < 0 || j >= a.cols())
        throw Error("cofactor index out of range");
    NameTable names = in.session.names();
    Parity ri = a.format().rows.at(i), cj2 = a.format().cols.at(j);
    if (ri == Parity::Even || cj2 == Parity::Even)
        emit_scalar("cofactor", cofactor(a, i, j, in.session.trunc), names);
    if (ri == Parity::Odd || cj2 == Parity::Odd)
        emit_scalar("cofactor_star", cofactor_star(a, i, j, in.session.trunc), names);
    return 0;
}

int cmd_cramer(const Input& in) {
    FormatMatrix a = parse_matrix(in.get("matrix"), in.session);
    std::vector<Scalar> rhs = parse_scalar_list(in.get("rhs"), in.session);
    std::vector<Scalar> x = solve_cramer(a, rhs, in.session.trunc);
    NameTable names = in.session.names();
    for (size_t k = 0; k < x.size(); ++k)
        emit_scalar("x" + std::to_string(k), x[k], names);
    return 0;
}

int cmd_wronskian(const Input& in, bool star) {
    std::vector<Scalar> fs = parse_scalar_list(in.get("functions"), in.session);
    Scalar w = star ? wronskian_star(fs, in.session.trunc)
                    : wronskian(fs, in.session.trunc);
    emit_scalar(star ? "wronskian_star" : "wronskian", w, in.session.names());
    return 0;
}

int cmd_reconstruct(const Input& in) {
    std::vector<Scalar> fs = parse_scalar_list(in.get("functions"), in.session);
    SuperDiffOp a = reconstruct_operator(fs, in.session.trunc);
    emit_operator("op", a, in.session.names());
    return 0;
}

int cmd_kernel(const Input& in, std::optional<int> order, std::optional<int> trunc) {
    SuperDiffOp a = parse_operator(in.get("op"), in.session);
    if (order && a.order() != *order)
        throw Error("operator order is " + std::to_string(a.order()) +
                    ", expected " + std::to_string(*order));
    std::vector<SuperFunction> basis =
        kernel_basis(a, trunc ? *trunc : in.session.trunc);
    int even = 0, odd = 0;
    for (const auto& f : basis)
        (f.parity() == Parity::Even ? even : odd)++;
    emit("dim", std::to_string(even) + "|" + std::to_string(odd));
    NameTable names = in.session.names();
    for (size_t k = 0; k < basis.size(); ++k) {
        emit("basis" + std::to_string(k), print_superfun(basis[k], names));
        emit("basis" + std::to_string(k) + "_parity",
             basis[k].parity() == Parity::Odd ? "odd" : "even");
    }
    return 0;
}

int cmd_darboux_elementary(const Input& in) {
    SuperDiffOp l0 = parse_operator(in.get("op"), in.session);
    Scalar phi = parse_scalar(in.get("phi"), in.session);
    Scalar lambda = parse_scalar(in.get("lambda"), in.session);
    ElementaryDT dt = elementary_dt(l0, phi, lambda, in.session.trunc);
    NameTable names = in.session.names();
    emit_operator("m", dt.m, names);
    emit_operator("l1", dt.l1, names);
    emit("intertwining",
         op_is_zero(intertwining_defect(dt.m, dt.l0, dt.l1)) ? "ok" : "failed");
    return 0;
}

int cmd_darboux_factorize(const Input& in) {
    SuperDiffOp l0 = parse_operator(in.get("op"), in.session);
    std::vector<Scalar> flag = parse_scalar_list(in.get("functions"), in.session);
    DarbouxChain chain = factorize_dt(l0, flag, in.session.trunc);
    NameTable names = in.session.names();
    for (size_t k = 0; k < chain.steps.size(); ++k) {
        emit_operator("m" + std::to_string(k + 1), chain.steps[k].m, names);
        emit("lambda" + std::to_string(k + 1),
             print_scalar(chain.steps[k].lambda, names));
    }
    emit_operator("m", chain.m, names);
    emit_operator("l1", chain.l1, names);
    emit("intertwining",
         op_is_zero(intertwining_defect(chain.m, chain.l0, chain.l1)) ? "ok"
                                                                      : "failed");
    return 0;
}

int cmd_darboux_dress(int n, int r) {
    DressingResult res = derive_dressing(n, r);
    for (int k = 1; k <= n; ++k)
        emit("b" + std::to_string(k), print_symbolic(res.b[k - 1]));
    for (int k = 1; k <= r; ++k)
        emit("compat" + std::to_string(k), print_symbolic(res.compatibility[k - 1]));
    return 0;
}

int cmd_verify(const Input& in) {
    SuperDiffOp m = parse_operator(in.get("m"), in.session);
    SuperDiffOp l0 = parse_operator(in.get("l0"), in.session);
    SuperDiffOp l1 = parse_operator(in.get("l1"), in.session);
    SuperDiffOp defect = intertwining_defect(m, l0, l1);
    if (op_is_zero(defect)) {
        emit("intertwining", "ok");
        return 0;
    }
    emit("intertwining", "failed");
    emit("defect", print_operator(defect, in.session.names()));
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculus of differential operators on the superline"};
    app.require_subcommand(1);

    std::string path;
    std::string side = "right";
    int ci = 0, cj = 0;
    std::optional<int> order, trunc;
    int dn = 1, dr = 1;
    bool star = false;

    auto add_input = [&](CLI::App* c) {
        c->add_option("input", path, "input file (default stdin)");
    };

    CLI::App* compose = app.add_subcommand("compose", "canonicalize an operator expression");
    add_input(compose);
    CLI::App* apply = app.add_subcommand("apply", "apply an operator to a function");
    add_input(apply);
    CLI::App* divide = app.add_subcommand("divide", "divide n by m with remainder");
    divide->add_option("--side", side, "left or right")
        ->check(CLI::IsMember({"left", "right"}));
    add_input(divide);
    CLI::App* ber = app.add_subcommand("ber", "Berezinian of a format matrix");
    add_input(ber);
    CLI::App* ber_star = app.add_subcommand("ber-star", "dual Berezinian");
    add_input(ber_star);
    CLI::App* cofactor = app.add_subcommand("cofactor", "cofactor at row i, column j");
    cofactor->add_option("i", ci, "row index")->required();
    cofactor->add_option("j", cj, "column index")->required();
    add_input(cofactor);
    CLI::App* cramer = app.add_subcommand("cramer", "solve A x = rhs by cofactors");
    add_input(cramer);
    CLI::App* wronskian = app.add_subcommand("wronskian", "Wronskian of a function list");
    wronskian->add_flag("--star", star, "dual Wronskian");
    add_input(wronskian);
    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "monic operator with prescribed kernel");
    add_input(reconstruct);
    CLI::App* kernel = app.add_subcommand("kernel", "kernel basis of an operator");
    kernel->add_option("--order", order, "assert the operator order");
    kernel->add_option("--trunc", trunc, "series truncation order");
    add_input(kernel);
    CLI::App* darboux = app.add_subcommand("darboux", "Darboux transformations");
    darboux->require_subcommand(1);
    CLI::App* elementary =
        darboux->add_subcommand("elementary", "one step from an eigenfunction");
    add_input(elementary);
    CLI::App* factorize =
        darboux->add_subcommand("factorize", "factor the transformation of a flag");
    add_input(factorize);
    CLI::App* dress =
        darboux->add_subcommand("dress", "closed dressing formulas for jets");
    dress->add_option("--n", dn, "order of the transformed operator")->required();
    dress->add_option("--r", dr, "order of the dressing operator")->required();
    CLI::App* verify = app.add_subcommand("verify", "check m l0 = l1 m");
    add_input(verify);

    CLI11_PARSE(app, argc, argv);

    try {
        if (compose->parsed()) return cmd_compose(read_input(path));
        if (apply->parsed()) return cmd_apply(read_input(path));
        if (divide->parsed()) return cmd_divide(read_input(path), side);
        if (ber->parsed()) return cmd_ber(read_input(path), false);
        if (ber_star->parsed()) return cmd_ber(read_input(path), true);
        if (cofactor->parsed()) return cmd_cofactor(read_input(path), ci, cj);
        if (cramer->parsed()) return cmd_cramer(read_input(path));
        if (wronskian->parsed()) return cmd_wronskian(read_input(path), star);
        if (reconstruct->parsed()) return cmd_reconstruct(read_input(path));
        if (kernel->parsed()) return cmd_kernel(read_input(path), order, trunc);
        if (darboux->parsed()) {
            if (elementary->parsed()) return cmd_darboux_elementary(read_input(path));
            if (factorize->parsed()) return cmd_darboux_factorize(read_input(path));
            if (dress->parsed()) return cmd_darboux_dress(dn, dr);
        }
        if (verify->parsed()) return cmd_verify(read_input(path));
    } catch (const ParseError& e) {
        std::cout << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cout << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
