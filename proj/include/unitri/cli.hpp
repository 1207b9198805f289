#pragma once

// Command-line front end. dispatch() never exits the process; it returns
//   0 success / verified, 1 verification failed or target not found,
//   2 invalid input, 3 resource cap exceeded.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unitri/constructions.hpp"
#include "unitri/error.hpp"
#include "unitri/free_words.hpp"
#include "unitri/group_explorer.hpp"
#include "unitri/serialization.hpp"
#include "unitri/symbolic_oracle.hpp"

namespace unitri::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kInvalid = 2, kCapExceeded = 3 };

inline int exit_code_for(ErrorKind k)
{
    switch (k) {
    case ErrorKind::CapExceeded:
    case ErrorKind::NeedsRandomMode: return kCapExceeded;
    case ErrorKind::ConstructionBug: return kFailed;
    default: return kInvalid;
    }
}

/// Names accepted by --word besides s-expressions.
inline Word named_word(const std::string& text)
{
    if (!text.empty() && text.front() == '(')
        return parse_sexpr(text);
    const auto& f = two_gen_family();
    const std::map<std::string, Word> names{
        {"a", f.a},         {"b", f.b},         {"ba", f.ba},         {"baa", f.baa},     {"bab", f.bab},
        {"c5", f.c5},       {"bab_ba", f.bab_ba}, {"c10", f.c10},     {"baaa", f.baaa},   {"baab", f.baab},
        {"babb", f.babb},   {"head6", f.head6}, {"head6p", f.head6p}, {"head6pp", f.head6pp},
        {"c21", f.c21},     {"c21p", f.c21p},   {"c21pp", f.c21pp},
    };
    if (auto it = names.find(text); it != names.end())
        return it->second;
    return parse_sexpr(text);
}

inline Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::InvalidInput, "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::InvalidInput, "'" + path + "' is not valid JSON: " + e.what());
    }
}

inline std::vector<long long> parse_int_list(const std::string& text, std::size_t expected, const char* what)
{
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            fail(ErrorKind::InvalidInput, std::string("bad integer in ") + what + ": '" + item + "'");
        }
    }
    if (out.size() != expected)
        fail(ErrorKind::InvalidInput, std::string(what) + " needs " + std::to_string(expected) + " comma-separated integers");
    return out;
}

inline unsigned threads_from_env()
{
    const char* v = std::getenv("UNITRI_THREADS");
    if (!v || !*v)
        return 0;
    char* end = nullptr;
    const unsigned long t = std::strtoul(v, &end, 10);
    if (*end != '\0' || t > 1024)
        fail(ErrorKind::InvalidInput, "UNITRI_THREADS must be a number in [0, 1024]");
    return static_cast<unsigned>(t);
}

/// Generators for `series` and `search --witness`: a JSON array of matrices or an
/// object with a "matrices" array. Entries are reduced mod p.
inline std::vector<FpMatrix> read_generators(const std::string& path, std::uint32_t p)
{
    const Json j = read_json_file(path);
    const Json* list = &j;
    if (j.is_object() && j.contains("matrices"))
        list = &j["matrices"];
    if (!list->is_array() || list->empty())
        fail(ErrorKind::InvalidInput, "'" + path + "' holds no matrices");
    const PrimeField f(p);
    std::vector<FpMatrix> out;
    for (const auto& m : *list)
        out.push_back(matrix_from_json(m, f));
    for (const auto& m : out)
        if (m.dim() != out.front().dim())
            fail(ErrorKind::InvalidInput, "generators have different dimensions");
    return out;
}

struct Options {
    int d = 3;
    std::string ring = "fp:2";
    std::string rst = "1,0,0";
    int component = 0;
    int max_n = 1025;
    std::string output;
    std::string witness;
    std::string word;
    int n = 0;
    std::string entry;
    std::string monomial;
    std::uint64_t cap = kDefaultTermCap;
    std::uint32_t p = 2;
    std::string mode = "random";
    std::uint64_t samples = 10000;
    int target = 3;
    std::uint64_t seed = 1;
    bool force = false;
    std::string gens;
    std::string big_n;
};

class Dispatcher {
public:
    Dispatcher(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(int argc, const char* const* argv)
    {
        CLI::App app{"Unitriangular groups: witnesses, symbolic expansion, subgroup search", "unitri"};
        app.set_version_flag("--version", version());
        app.require_subcommand(1);
        build(app);

        std::vector<std::string> args;
        for (int k = argc - 1; k >= 1; --k)
            args.emplace_back(argv[k]);
        try {
            app.parse(args);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out_, err_);
            return code == 0 ? kOk : kInvalid;
        }

        try {
            return action_();
        } catch (const Error& e) {
            err_ << "error: " << e.what() << "\n";
            return exit_code_for(e.kind());
        } catch (const std::bad_alloc&) {
            err_ << "error: out of memory\n";
            return kCapExceeded;
        } catch (const std::exception& e) {
            err_ << "error: " << e.what() << "\n";
            return kInvalid;
        }
    }

private:
    void build(CLI::App& app)
    {
        auto* construct = app.add_subcommand("construct", "Build a certified generating set");
        construct->require_subcommand(1);

        auto* three = construct->add_subcommand("three-gen", "Three generators of U_n, n = 2^(d-1)+1, with w(A,B,C) = X_{1,n}");
        three->add_option("--d", o_.d, "Derived length")->required()->check(CLI::Range(1, 16));
        three->add_option("--ring", o_.ring, "fp:P or int")->capture_default_str();
        three->add_option("--rst", o_.rst, "Base exponents r,s,t")->capture_default_str();
        three->add_option("--max-n", o_.max_n, "Refuse larger dimensions")->capture_default_str();
        three->add_option("-o,--output", o_.output, "Also write the witness here");
        three->callback([this] { action_ = [this] { return construct_three(); }; });

        auto* two = construct->add_subcommand("two-gen", "Two generators whose word evaluates to X_{1,n}^{+-1}");
        two->add_option("--d", o_.d, "Derived length")->required()->check(CLI::Range(3, 12));
        two->add_option("--ring", o_.ring, "fp:P or int")->capture_default_str();
        two->add_option("--component", o_.component, "Member of the word triple (d >= 5)")
            ->check(CLI::Range(0, 2))
            ->capture_default_str();
        two->add_option("--max-n", o_.max_n, "Refuse larger dimensions")->capture_default_str();
        two->add_option("-o,--output", o_.output, "Also write the witness here");
        two->callback([this] { action_ = [this] { return construct_two(); }; });

        auto* verify = app.add_subcommand("verify", "Re-check a witness file");
        verify->add_option("--witness", o_.witness, "Witness JSON")->required();
        verify->callback([this] { action_ = [this] { return verify_cmd(); }; });

        auto* expand = app.add_subcommand("expand", "Entry (i,j) of w(A,B) as a polynomial in the superdiagonal variables");
        expand->add_option("--word", o_.word, "Name (c5, c10, c21, ...) or s-expression")->required();
        expand->add_option("--n", o_.n, "Dimension (default weight + 1)");
        expand->add_option("--entry", o_.entry, "i,j (default 1,n)");
        expand->add_option("--cap", o_.cap, "Largest 2^(j-i) allowed")->capture_default_str();
        expand->callback([this] { action_ = [this] { return expand_cmd(); }; });

        auto* coeff = app.add_subcommand("coeff", "Coefficient of one monomial in entry (1,n)");
        coeff->add_option("--word", o_.word, "Name or s-expression")->required();
        coeff->add_option("--monomial", o_.monomial, "Letters over {a,b}, e.g. aabab")->required();
        coeff->add_option("--cap", o_.cap, "Largest 2^(n-1) allowed")->capture_default_str();
        coeff->callback([this] { action_ = [this] { return coeff_cmd(); }; });

        auto* search = app.add_subcommand("search", "Derived lengths of generator pairs of U_n(F_p)");
        search->add_option("--n", o_.n, "Dimension")->required()->check(CLI::Range(1, 64));
        search->add_option("--p", o_.p, "Prime")->capture_default_str();
        search->add_option("--mode", o_.mode, "exhaustive or random")
            ->check(CLI::IsMember({"exhaustive", "random"}))
            ->capture_default_str();
        search->add_option("--samples", o_.samples, "Random pairs to draw")->capture_default_str();
        search->add_option("--target", o_.target, "Derived length sought")->capture_default_str();
        search->add_option("--seed", o_.seed, "Sampling seed")->capture_default_str();
        search->add_option("--witness", o_.witness, "Pair witness examined before the samples");
        search->add_flag("--force", o_.force, "Allow exhaustive mode beyond 2^26 pairs");
        search->callback([this] { action_ = [this] { return search_cmd(); }; });

        auto* series = app.add_subcommand("series", "Derived and lower central series orders of <gens>");
        series->add_option("--gens", o_.gens, "JSON list of matrices (or a witness)")->required();
        series->add_option("--p", o_.p, "Prime")->capture_default_str();
        series->callback([this] { action_ = [this] { return series_cmd(); }; });

        auto* prop = app.add_subcommand("proportion", "Exact share of n <= N with a maximal-length 2-generated subgroup");
        prop->add_option("--N", o_.big_n, "Upper bound N >= 1")->required();
        prop->callback([this] { action_ = [this] { return proportion_cmd(); }; });
    }

    void emit(const Json& j)
    {
        const std::string text = j.dump(2);
        out_ << text << "\n";
        if (!o_.output.empty()) {
            std::ofstream f(o_.output);
            if (!f)
                fail(ErrorKind::InvalidInput, "cannot write '" + o_.output + "'");
            f << text << "\n";
        }
    }

    void check_size(long long n) const
    {
        if (n > o_.max_n)
            fail(ErrorKind::CapExceeded, "dimension " + std::to_string(n) + " exceeds --max-n " + std::to_string(o_.max_n));
    }

    int construct_three()
    {
        check_size((1LL << (o_.d - 1)) + 1);
        const auto v = parse_int_list(o_.rst, 3, "--rst");
        const std::array<long long, 3> rst{v[0], v[1], v[2]};
        const RingSpec spec = RingSpec::parse(o_.ring);
        if (spec.integer)
            emit(witness_to_json(three_gen_triple(o_.d, IntegerRing{}, rst)));
        else
            emit(witness_to_json(three_gen_triple(o_.d, PrimeField(spec.p), rst)));
        return kOk;
    }

    int construct_two()
    {
        check_size(o_.d <= 5 ? 22 : 21LL * (1LL << (o_.d - 5)) + 1);
        const RingSpec spec = RingSpec::parse(o_.ring);
        if (spec.integer)
            emit(witness_to_json(two_gen_pair(o_.d, IntegerRing{}, o_.component)));
        else
            emit(witness_to_json(two_gen_pair(o_.d, PrimeField(spec.p), o_.component)));
        return kOk;
    }

    int verify_cmd()
    {
        const Json w = read_json_file(o_.witness);
        const VerifyResult r = verify_witness(w);
        Json j;
        j["verified"] = r.ok;
        j["kind"] = w.value("kind", "");
        j["d"] = w.value("d", 0);
        j["n"] = w.value("n", 0);
        j["failures"] = r.failures;
        j["version"] = version();
        emit(j);
        return r.ok ? kOk : kFailed;
    }

    int expand_cmd()
    {
        const Word w = named_word(o_.word);
        const int n = o_.n > 0 ? o_.n : w.weight() + 1;
        int i = 1, jj = n;
        if (!o_.entry.empty()) {
            const auto v = parse_int_list(o_.entry, 2, "--entry");
            i = static_cast<int>(v[0]);
            jj = static_cast<int>(v[1]);
        }
        const MultilinearPoly p = entry_poly(w, n, i, jj, o_.cap);
        Json j;
        j["word"] = to_sexpr(w);
        j["n"] = n;
        j["entry"] = Json::array({i, jj});
        j["support"] = Json::array({i, jj - 1});
        Json terms = Json::array();
        std::vector<std::pair<std::string, mpz_class>> sorted;
        for (const auto& m : p.monomials())
            sorted.emplace_back(m.letters(), p.coefficient(m));
        std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (const auto& [letters, c] : sorted)
            terms.push_back(Json{{"monomial", letters}, {"coefficient", detail::integer_json(c)}});
        j["term_count"] = sorted.size();
        j["terms"] = std::move(terms);
        j["version"] = version();
        emit(j);
        return kOk;
    }

    int coeff_cmd()
    {
        const Word w = named_word(o_.word);
        const Monomial m = Monomial::parse(o_.monomial);
        if (m.lo() != 1)
            fail(ErrorKind::InvalidInput, "monomial must start at subscript 1");
        const int n = m.degree() + 1;
        const mpz_class c = monomial_coefficient(w, n, m, o_.cap);
        Json j;
        j["word"] = to_sexpr(w);
        j["n"] = n;
        j["monomial"] = m.letters();
        j["coefficient"] = detail::integer_json(c);
        j["version"] = version();
        emit(j);
        return kOk;
    }

    int search_cmd()
    {
        std::vector<std::pair<FpMatrix, FpMatrix>> extra;
        if (!o_.witness.empty()) {
            const auto gens = read_generators(o_.witness, o_.p);
            if (gens.size() != 2)
                fail(ErrorKind::InvalidInput, "search --witness needs exactly two matrices");
            extra.emplace_back(gens[0], gens[1]);
        }
        const SearchMode mode = o_.mode == "exhaustive" ? SearchMode::Exhaustive : SearchMode::Random;
        const SearchReport r =
            search_pairs(o_.n, o_.p, mode, o_.samples, o_.target, o_.seed, extra, o_.force, threads_from_env());
        Json j;
        j["n"] = r.n;
        j["p"] = r.p;
        j["mode"] = to_string(r.mode);
        j["seed"] = r.seed;
        j["target"] = r.target_depth;
        j["examined"] = r.examined;
        j["max_derived_length"] = r.max_length;
        Json hist = Json::object();
        for (const auto& [len, count] : r.length_histogram)
            hist[std::to_string(len)] = count;
        j["histogram"] = std::move(hist);
        j["found"] = r.found();
        if (r.found())
            j["witness"] = Json{{"index", r.witness_index},
                                {"matrices", Json::array({matrix_to_json(r.witness->first),
                                                          matrix_to_json(r.witness->second)})}};
        else
            j["witness"] = nullptr;
        j["evidence"] = r.evidence();
        j["version"] = version();
        emit(j);
        return r.found() ? kOk : kFailed;
    }

    int series_cmd()
    {
        const auto gens = read_generators(o_.gens, o_.p);
        const int n = gens.front().dim();
        std::vector<int> derived, lcs;
        if (o_.p == 2 && n <= 64) {
            std::vector<PackedF2Matrix> packed;
            for (const auto& g : gens)
                packed.push_back(PackedF2Matrix::from(g));
            derived = derived_series_log_orders(F2Policy{n}, packed);
            lcs = lower_central_log_orders(F2Policy{n}, packed);
        } else {
            derived = derived_series_log_orders(FpPolicy{PrimeField(o_.p), n}, gens);
            lcs = lower_central_log_orders(FpPolicy{PrimeField(o_.p), n}, gens);
        }
        const auto orders = [&](const std::vector<int>& logs) {
            Json a = Json::array();
            for (int k : logs) {
                mpz_class o;
                mpz_ui_pow_ui(o.get_mpz_t(), o_.p, static_cast<unsigned long>(k));
                a.push_back(o.get_str());
            }
            return a;
        };
        Json j;
        j["n"] = n;
        j["p"] = o_.p;
        j["generators"] = gens.size();
        j["order"] = orders({derived.front()})[0];
        j["derived_log_orders"] = derived;
        j["derived_orders"] = orders(derived);
        j["derived_length"] = derived.size() - 1;
        j["lower_central_log_orders"] = lcs;
        j["lower_central_orders"] = orders(lcs);
        j["nilpotency_class"] = lcs.size() - 1;
        j["version"] = version();
        emit(j);
        return kOk;
    }

    int proportion_cmd()
    {
        mpz_class N;
        if (o_.big_n.empty() || o_.big_n.find_first_not_of("0123456789") != std::string::npos ||
            N.set_str(o_.big_n, 10) != 0)
            fail(ErrorKind::InvalidInput, "--N must be a positive integer");
        const mpq_class q = proportion_good(N);
        Json j;
        j["num"] = detail::integer_json(q.get_num());
        j["den"] = detail::integer_json(q.get_den());
        j["N"] = detail::integer_json(N);
        j["version"] = version();
        emit(j);
        return kOk;
    }

    std::ostream& out_;
    std::ostream& err_;
    Options o_;
    std::function<int()> action_;
};

inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    return Dispatcher(out, err).run(argc, argv);
}

} // namespace unitri::cli
