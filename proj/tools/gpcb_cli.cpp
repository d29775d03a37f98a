// Command-line front end: encode, decode, simulate, tune, list-codes.

#include <gpcb/code_catalog.hpp>
#include <gpcb/errors.hpp>
#include <gpcb/simulator.hpp>

#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace gpcb;

struct CodeOptions {
    std::string code = "GPCB-RS(73,53)";
    std::string construction;
    int m_blocks = 0;
    std::string interleaver = "random";
    std::uint64_t interleaver_seed = 1;
};

struct DecodeOptions {
    int iterations = 8;
    std::string alpha;
    std::string beta;
    std::string fallback = "extrinsic";
};

void add_code_options(CLI::App* app, CodeOptions& o)
{
    app->add_option("--code", o.code, "Reference code name (GPCB-RS(73,53)) or component list (bch:63,51,2+rs:63,51,6)")
        ->capture_default_str();
    app->add_option("--construction", o.construction, "Override the construction implied by the code")
        ->check(CLI::IsMember({"c1", "c2"}));
    app->add_option("--m-blocks", o.m_blocks, "Sub-block multiplier M (default: implied by the code name)")
        ->check(CLI::PositiveNumber);
    app->add_option("--interleaver", o.interleaver, "random, block, diagonal, cyclic, helical or berrou")
        ->check(CLI::IsMember({"random", "block", "diagonal", "cyclic", "helical", "berrou"}))
        ->capture_default_str();
    app->add_option("--interleaver-seed", o.interleaver_seed, "Seed of the random interleaver")->capture_default_str();
}

void add_decode_options(CLI::App* app, DecodeOptions& o)
{
    app->add_option("--iterations", o.iterations, "Decoding iterations")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--alpha", o.alpha, "Comma-separated alpha per half-iteration");
    app->add_option("--beta", o.beta, "Comma-separated beta per half-iteration");
    app->add_option("--fallback", o.fallback, "Reliability rule for bits without a competitor")
        ->check(CLI::IsMember({"extrinsic", "soft-output"}))
        ->capture_default_str();
}

GpcbSpec make_spec(const CodeOptions& o)
{
    const NamedCode named = parse_code(o.code);
    InterleaverSpec il;
    il.pattern = parse_interleaver_pattern(o.interleaver);
    il.seed = o.interleaver_seed;
    const Construction c = o.construction.empty() ? named.construction : parse_construction(o.construction);
    return gpcb_spec(named.code1, named.code2, o.m_blocks > 0 ? o.m_blocks : named.M, il, c);
}

std::vector<double> parse_list(const std::string& text, const char* what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw InvalidParams(std::string("bad ") + what + " value '" + item + "'");
        }
    }
    return out;
}

DecodeParams make_params(const DecodeOptions& o)
{
    DecodeParams p = DecodeParams::defaults(o.iterations);
    if (!o.alpha.empty()) p.alpha = parse_list(o.alpha, "alpha");
    if (!o.beta.empty()) p.beta = parse_list(o.beta, "beta");
    p.fallback = o.fallback == "soft-output" ? FallbackRule::soft_output : FallbackRule::extrinsic;
    p.validate();
    return p;
}

std::vector<double> parse_ebn0_range(const std::string& text)
{
    const auto parts = [&] {
        std::vector<std::string> v;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) v.push_back(item);
        return v;
    }();
    auto num = [&](const std::string& s) {
        try {
            return std::stod(s);
        } catch (const std::logic_error&) {
            throw InvalidParams("bad Eb/N0 value '" + s + "'");
        }
    };
    if (parts.size() == 1) return {num(parts[0])};
    if (parts.size() != 3) throw InvalidParams("Eb/N0 range must be start:step:stop, got '" + text + "'");
    const double start = num(parts[0]), step = num(parts[1]), stop = num(parts[2]);
    if (step <= 0.0 || stop < start) throw InvalidParams("Eb/N0 range needs step > 0 and stop >= start");
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double v = start + i * step;
        if (v > stop + 1e-9) break;
        out.push_back(std::round(v * 1e9) / 1e9);
    }
    return out;
}

/// Output stream for --out; "-" or empty selects stdout.
class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw Error("cannot open '" + path + "' for writing");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::string read_input(const std::string& path)
{
    std::ostringstream ss;
    if (path.empty() || path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw Error("cannot open '" + path + "'");
        ss << in.rdbuf();
    }
    return ss.str();
}

std::vector<std::uint8_t> parse_bits(const std::string& text)
{
    std::vector<std::uint8_t> bits;
    for (char c : text) {
        if (c == '0' || c == '1') bits.push_back(static_cast<std::uint8_t>(c - '0'));
        else if (!std::isspace(static_cast<unsigned char>(c)) && c != ',') throw InvalidParams(std::string("unexpected character '") + c + "' in bit string");
    }
    return bits;
}

std::vector<double> parse_reals(const std::string& text)
{
    std::vector<double> v;
    std::string cleaned = text;
    for (char& c : cleaned)
        if (c == ',') c = ' ';
    std::istringstream ss(cleaned);
    double x;
    while (ss >> x) v.push_back(x);
    if (!ss.eof()) throw InvalidParams("soft input must be whitespace- or comma-separated numbers");
    return v;
}

void write_bits(std::ostream& os, const std::vector<std::uint8_t>& bits)
{
    for (auto b : bits) os << static_cast<char>('0' + b);
    os << '\n';
}

void list_codes(bool all)
{
    std::printf("%-24s %-12s %-6s %5s %-18s %-18s %8s %8s %6s\n", "name", "family", "constr", "M", "code1", "code2",
                "bits", "info", "rate");
    auto names = catalog_code_names();
    if (all) {
        const auto extra = experiment_code_names();
        names.insert(names.end(), extra.begin(), extra.end());
    }
    for (const auto& name : names) {
        const NamedCode nc = parse_code(name);
        for (int M : {1, 10, 100, 1000}) {
            const GpcbSpec s = gpcb_spec(nc.code1, nc.code2, M, {}, nc.construction);
            const char* family = nc.code1.kind != nc.code2.kind ? "BCH+RS" : nc.code1.kind == CodeKind::bch ? "BCH" : "RS";
            std::printf("%-24s %-12s %-6s %5d %-18s %-18s %8zu %8zu %4ld/%-4ld\n", s.name().c_str(), family,
                        std::string(to_string(s.construction)).c_str(), M, s.code1.name().c_str(),
                        s.code2.name().c_str(), s.codeword_bits(), s.info_bits(), s.rate.num, s.rate.den);
        }
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"GPCB codes over BCH/RS components: encoder, iterative decoder and BER simulator"};
    app.set_config("--config", "", "TOML/INI file mirroring the command-line flags (flags override it)");
    app.require_subcommand(1);

    CodeOptions code;
    DecodeOptions dec;
    std::string out_path;
    std::string in_path;
    std::uint64_t seed = 1;
    std::string ebn0 = "3:0.5:5";
    std::uint64_t min_frame_errors = 100;
    std::uint64_t max_frames = 1'000'000;
    unsigned threads = 0;
    std::uint64_t tune_frames = 20;
    bool all_codes = false;

    auto* list = app.add_subcommand("list-codes", "List the reference codes");
    list->add_flag("--all", all_codes, "Also list the experiment codes");

    auto* encode = app.add_subcommand("encode", "Encode a message given as a 0/1 string");
    add_code_options(encode, code);
    encode->add_option("--input", in_path, "Message file ('-' for stdin)");
    encode->add_option("--out", out_path, "Output file (default stdout)");

    auto* decode = app.add_subcommand("decode", "Decode normalized channel LLRs to message bits");
    add_code_options(decode, code);
    add_decode_options(decode, dec);
    decode->add_option("--input", in_path, "Soft-value file ('-' for stdin)");
    decode->add_option("--out", out_path, "Output file (default stdout)");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo BER/FER over BPSK/AWGN, CSV output");
    add_code_options(simulate, code);
    add_decode_options(simulate, dec);
    simulate->add_option("--seed", seed, "Channel seed")->capture_default_str();
    simulate->add_option("--ebn0", ebn0, "Eb/N0 in dB: value or start:step:stop")->capture_default_str();
    simulate->add_option("--min-frame-errors", min_frame_errors, "Stop after this many final-iteration frame errors")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    simulate->add_option("--max-frames", max_frames, "Frame cap per Eb/N0 point")->capture_default_str();
    simulate->add_option("--threads", threads, "Worker threads (0: all cores)")->capture_default_str();
    simulate->add_option("--out", out_path, "CSV file (default stdout)");

    auto* tune = app.add_subcommand("tune", "Greedy alpha/beta schedule search");
    add_code_options(tune, code);
    tune->add_option("--iterations", dec.iterations, "Iterations to tune")->check(CLI::PositiveNumber)->capture_default_str();
    tune->add_option("--fallback", dec.fallback, "Reliability rule for bits without a competitor")
        ->check(CLI::IsMember({"extrinsic", "soft-output"}))
        ->capture_default_str();
    tune->add_option("--alpha", dec.alpha, "Comma-separated alpha pool (default: reference pool)");
    tune->add_option("--beta", dec.beta, "Comma-separated beta pool (default: reference pool)");
    tune->add_option("--seed", seed, "Evaluation-set seed")->capture_default_str();
    tune->add_option("--ebn0", ebn0, "Eb/N0 in dB")->capture_default_str();
    tune->add_option("--max-frames", tune_frames, "Frames in the evaluation set")->capture_default_str();
    tune->add_option("--out", out_path, "Write the schedule as a config fragment (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            list_codes(all_codes);
            return 0;
        }
        const GpcbSpec spec = make_spec(code);
        Output out(out_path);

        if (encode->parsed()) {
            const GpcbCodec codec(spec);
            write_bits(out.stream(), codec.encode_bits(parse_bits(read_input(in_path))));
        } else if (decode->parsed()) {
            const auto params = make_params(dec);
            auto codec = std::make_shared<const GpcbCodec>(spec);
            IterativeDecoder decoder(codec);
            const auto soft = parse_reals(read_input(in_path));
            std::vector<std::uint8_t> bits(spec.info_bits());
            decoder.decode(soft, params, bits);
            write_bits(out.stream(), bits);
        } else if (simulate->parsed()) {
            const auto params = make_params(dec);
            const auto points = parse_ebn0_range(ebn0);
            write_csv_header(out.stream());
            for (double db : points) {
                const auto res = run_ber(spec, params, ChannelSpec{db, spec.rate.value(), seed},
                                         StopRule{min_frame_errors, max_frames}, RunOptions{threads, 8});
                write_csv_rows(out.stream(), res);
                out.stream().flush();
                std::fprintf(stderr, "%s M=%d %.2f dB: %llu frames, final BER %.3g (%.1f s)\n", res.code.c_str(),
                             res.M, db, static_cast<unsigned long long>(res.final_iteration().frames),
                             res.final_iteration().ber(), res.wall_seconds);
            }
        } else if (tune->parsed()) {
            TuningPools pools = TuningPools::defaults();
            if (!dec.alpha.empty()) pools.alpha = parse_list(dec.alpha, "alpha");
            if (!dec.beta.empty()) pools.beta = parse_list(dec.beta, "beta");
            const auto points = parse_ebn0_range(ebn0);
            if (points.size() != 1) throw InvalidParams("tune takes a single Eb/N0 value");
            const TuningBudget budget{dec.iterations, tune_frames,
                                      dec.fallback == "soft-output" ? FallbackRule::soft_output : FallbackRule::extrinsic};
            const auto p = tune_schedule(spec, ChannelSpec{points.front(), spec.rate.value(), seed}, pools, budget);
            auto join = [](const std::vector<double>& v) {
                std::ostringstream ss;
                for (std::size_t i = 0; i < v.size(); ++i) ss << (i ? "," : "") << v[i];
                return ss.str();
            };
            out.stream() << "iterations=" << p.iterations << "\nalpha=\"" << join(p.alpha) << "\"\nbeta=\""
                         << join(p.beta) << "\"\n";
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
