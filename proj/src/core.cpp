#include "ugspec/core.hpp"

#include "ugspec/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ugspec {

Permutation::Permutation(std::vector<Label> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Label img : images_) {
        if (img >= images_.size() || seen[img])
            throw InvalidInstance("permutation is not a bijection on {0.." +
                                  std::to_string(images_.size()) + "-1}");
        seen[img] = true;
    }
}

Permutation Permutation::identity(std::size_t k) {
    std::vector<Label> img(k);
    for (std::size_t i = 0; i < k; ++i)
        img[i] = static_cast<Label>(i);
    return Permutation(std::move(img));
}

Permutation Permutation::cyclic_shift(std::size_t k, Label c) {
    std::vector<Label> img(k);
    c %= k;
    for (std::size_t i = 0; i < k; ++i)
        img[i] = static_cast<Label>((i + k - c) % k);
    return Permutation(std::move(img));
}

Permutation Permutation::xor_shift(std::size_t k, Label s) {
    if (k == 0 || (k & (k - 1)) != 0 || s >= k)
        throw InvalidInstance("xor_shift needs k a power of two and s < k");
    std::vector<Label> img(k);
    for (std::size_t i = 0; i < k; ++i)
        img[i] = static_cast<Label>(i ^ s);
    return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
    std::vector<Label> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
        inv[images_[i]] = static_cast<Label>(i);
    Permutation p;
    p.images_ = std::move(inv);
    return p;
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != i)
            return false;
    return true;
}

UGInstance::UGInstance(std::size_t n, std::size_t k, std::vector<UGEdge> edges)
    : UGInstance(n, k, std::move(edges), 1.0) {
    double max_w = 0.0;
    for (const auto &e : edges_)
        max_w = std::max(max_w, e.weight);
    if (max_w > 1.0) {
        for (auto &e : edges_)
            e.weight /= max_w;
        weight_scale_ = max_w;
        total_weight_ = 0.0;
        std::fill(degrees_.begin(), degrees_.end(), 0.0);
        for (const auto &e : edges_) {
            total_weight_ += e.weight;
            degrees_[e.u] += e.weight;
            if (e.v != e.u)
                degrees_[e.v] += e.weight;
        }
    }
}

UGInstance::UGInstance(std::size_t n, std::size_t k, std::vector<UGEdge> edges, double weight_scale)
    : n_(n), k_(k), edges_(std::move(edges)), weight_scale_(weight_scale), degrees_(n, 0.0) {
    if (n_ == 0)
        throw InvalidInstance("instance needs at least one vertex");
    if (k_ == 0)
        throw InvalidInstance("alphabet size must be positive");
    if (!(weight_scale_ > 0.0) || !std::isfinite(weight_scale_))
        throw InvalidInstance("weight scale must be positive and finite");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto &e = edges_[i];
        if (e.u >= n_ || e.v >= n_)
            throw InvalidInstance("edge " + std::to_string(i) + " has a vertex index >= n");
        if (e.perm.size() != k_)
            throw InvalidInstance("edge " + std::to_string(i) + " permutation has size " +
                                  std::to_string(e.perm.size()) + ", expected " + std::to_string(k_));
        if (!std::isfinite(e.weight) || e.weight < 0.0)
            throw InvalidInstance("edge " + std::to_string(i) + " weight must be finite and >= 0");
        total_weight_ += e.weight;
        degrees_[e.u] += e.weight;
        if (e.v != e.u)
            degrees_[e.v] += e.weight;
    }
    if (!(total_weight_ > 0.0))
        throw InvalidInstance("instance total weight must be positive");
}

double UGInstance::average_degree() const {
    double s = 0.0;
    for (double d : degrees_)
        s += d;
    return s / static_cast<double>(n_);
}

std::optional<double> UGInstance::regular_degree(double tol) const {
    const double mean = average_degree();
    for (double d : degrees_)
        if (std::abs(d - mean) > tol * std::max(1.0, std::abs(mean)))
            return std::nullopt;
    return mean;
}

void check_labeling(const UGInstance &inst, const Labeling &L) {
    if (L.size() != inst.n())
        throw InvalidLabeling("labeling has " + std::to_string(L.size()) + " entries, instance has " +
                              std::to_string(inst.n()) + " vertices");
    for (std::size_t u = 0; u < L.size(); ++u)
        if (L[u] >= inst.k())
            throw InvalidLabeling("label " + std::to_string(L[u]) + " at vertex " + std::to_string(u) +
                                  " is out of range for k=" + std::to_string(inst.k()));
}

double satisfied_weight(const UGInstance &inst, const Labeling &L) {
    check_labeling(inst, L);
    double s = 0.0;
    for (const auto &e : inst.edges())
        if (e.perm(L[e.u]) == L[e.v])
            s += e.weight;
    return s;
}

double value(const UGInstance &inst, const Labeling &L) {
    return satisfied_weight(inst, L) / inst.total_weight();
}

CharacteristicVector characteristic_vector(const Labeling &L, std::size_t k, bool normalized) {
    const std::size_t n = L.size();
    if (n == 0)
        throw InvalidLabeling("empty labeling");
    CharacteristicVector cv;
    cv.normalized = normalized;
    cv.entries.assign(n * k, 0.0);
    const double one = normalized ? 1.0 / std::sqrt(static_cast<double>(n)) : 1.0;
    for (std::size_t u = 0; u < n; ++u) {
        if (L[u] >= k)
            throw InvalidLabeling("label " + std::to_string(L[u]) + " out of range for k=" + std::to_string(k));
        cv.entries[u * k + L[u]] = one;
    }
    return cv;
}

Labeling read_off_assignment(std::span<const double> x, std::size_t n, std::size_t k) {
    if (x.size() != n * k)
        throw PreconditionError("read_off_assignment: vector has " + std::to_string(x.size()) +
                                " entries, expected n*k=" + std::to_string(n * k));
    std::vector<Label> labels(n);
    for (std::size_t u = 0; u < n; ++u) {
        const double *block = x.data() + u * k;
        std::size_t best = 0;
        for (std::size_t i = 1; i < k; ++i)
            if (block[i] > block[best])
                best = i;
        labels[u] = static_cast<Label>(best);
    }
    return Labeling(std::move(labels));
}

// ---- text format ----------------------------------------------------------

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

template <typename T> T parse_int(std::string_view tok, std::size_t line, const char *what) {
    T v{};
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw ParseError(line, std::string("expected integer ") + what + ", got '" + std::string(tok) + "'");
    return v;
}

double parse_real(std::string_view tok, std::size_t line, const char *what) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw ParseError(line, std::string("expected number ") + what + ", got '" + std::string(tok) + "'");
    return v;
}

} // namespace

UGInstance parse_instance(std::string_view text) {
    enum class Kind { none, ug, maxlin } kind = Kind::none;
    std::size_t n = 0, k = 0;
    double scale = 1.0;
    bool have_scale = false;
    std::vector<UGEdge> edges;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;

        auto toks = split_ws(line);
        if (toks.empty())
            continue;
        if (toks[0].front() == '#') {
            // `# weight_scale <x>` carries the ingest rescale factor through a round trip.
            if (toks.size() == 3 && toks[0] == "#" && toks[1] == "weight_scale") {
                scale = parse_real(toks[2], line_no, "weight_scale");
                have_scale = true;
            }
            continue;
        }
        for (std::size_t t = 0; t < toks.size(); ++t)
            if (toks[t].front() == '#') {
                toks.resize(t);
                break;
            }

        if (kind == Kind::none) {
            if (toks.size() != 3 || (toks[0] != "ug" && toks[0] != "maxlin"))
                throw ParseError(line_no, "malformed header, expected 'ug <n> <k>' or 'maxlin <n> <k>'");
            kind = toks[0] == "ug" ? Kind::ug : Kind::maxlin;
            n = parse_int<std::size_t>(toks[1], line_no, "n");
            k = parse_int<std::size_t>(toks[2], line_no, "k");
            if (n == 0 || k == 0)
                throw ParseError(line_no, "malformed header, n and k must be positive");
            continue;
        }

        const std::size_t expect = kind == Kind::ug ? 3 + k : 4;
        if (toks.size() != expect)
            throw ParseError(line_no, "expected " + std::to_string(expect) + " fields, got " +
                                          std::to_string(toks.size()));
        UGEdge e;
        const auto u = parse_int<std::uint64_t>(toks[0], line_no, "u");
        const auto v = parse_int<std::uint64_t>(toks[1], line_no, "v");
        if (u >= n || v >= n)
            throw ParseError(line_no, "vertex index >= n=" + std::to_string(n));
        e.u = static_cast<Vertex>(u);
        e.v = static_cast<Vertex>(v);
        e.weight = parse_real(toks[2], line_no, "weight");
        if (!std::isfinite(e.weight) || e.weight < 0.0)
            throw ParseError(line_no, "weight must be finite and >= 0");
        if (kind == Kind::ug) {
            std::vector<Label> img(k);
            for (std::size_t i = 0; i < k; ++i) {
                const auto x = parse_int<std::uint64_t>(toks[3 + i], line_no, "image");
                if (x >= k)
                    throw ParseError(line_no, "permutation image >= k");
                img[i] = static_cast<Label>(x);
            }
            try {
                e.perm = Permutation(std::move(img));
            } catch (const InvalidInstance &) {
                throw ParseError(line_no, "permutation is not a bijection");
            }
        } else {
            const auto c = parse_int<std::int64_t>(toks[3], line_no, "c");
            const auto kk = static_cast<std::int64_t>(k);
            e.perm = Permutation::cyclic_shift(k, static_cast<Label>(((c % kk) + kk) % kk));
        }
        edges.push_back(std::move(e));
    }
    if (kind == Kind::none)
        throw ParseError(line_no, "missing header");
    try {
        if (have_scale)
            return UGInstance(n, k, std::move(edges), scale);
        return UGInstance(n, k, std::move(edges));
    } catch (const InvalidInstance &e) {
        throw ParseError(line_no, e.what());
    }
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string serialize_instance(const UGInstance &inst) {
    std::string out = "ug " + std::to_string(inst.n()) + " " + std::to_string(inst.k()) + "\n";
    if (inst.weight_scale() != 1.0)
        out += "# weight_scale " + format_double(inst.weight_scale()) + "\n";
    for (const auto &e : inst.edges()) {
        out += std::to_string(e.u);
        out += ' ';
        out += std::to_string(e.v);
        out += ' ';
        out += format_double(e.weight);
        for (Label img : e.perm.images()) {
            out += ' ';
            out += std::to_string(img);
        }
        out += '\n';
    }
    return out;
}

Labeling parse_labeling(std::string_view text) {
    std::vector<Label> labels;
    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            nl = text.size();
        auto line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        for (auto tok : split_ws(line)) {
            if (tok.front() == '#')
                break;
            labels.push_back(parse_int<Label>(tok, line_no, "label"));
        }
    }
    return Labeling(std::move(labels));
}

std::string serialize_labeling(const Labeling &L) {
    std::string out;
    for (std::size_t u = 0; u < L.size(); ++u) {
        if (u)
            out += ' ';
        out += std::to_string(L[u]);
    }
    out += '\n';
    return out;
}

} // namespace ugspec
