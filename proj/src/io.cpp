#include "zst/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "zst/errors.hpp"

namespace zst {

namespace {

std::string fmt_double(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e308" : "-1e308";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15e", v);
    return buf;
}

void dump_rec(const Json& j, int indent, int depth, std::string& out) {
    const std::string pad = indent > 0 ? std::string(std::size_t(indent * (depth + 1)), ' ') : "";
    const std::string pad0 = indent > 0 ? std::string(std::size_t(indent * depth), ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) { out += "{}"; return; }
            out += "{";
            out += nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) { out += ","; out += nl; }
                first = false;
                out += pad + Json(it.key()).dump() + (indent > 0 ? ": " : ":");
                dump_rec(it.value(), indent, depth + 1, out);
            }
            out += nl + pad0 + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) { out += "[]"; return; }
            // short numeric arrays (complex pairs) stay on one line
            bool flat = j.size() <= 2;
            for (const auto& e : j) flat = flat && e.is_number();
            if (flat || indent == 0) {
                out += "[";
                for (std::size_t k = 0; k < j.size(); ++k) {
                    if (k) out += indent > 0 ? ", " : ",";
                    dump_rec(j[k], 0, 0, out);
                }
                out += "]";
                return;
            }
            out += "[";
            out += nl;
            for (std::size_t k = 0; k < j.size(); ++k) {
                if (k) { out += ","; out += nl; }
                out += pad;
                dump_rec(j[k], indent, depth + 1, out);
            }
            out += nl + pad0 + "]";
            return;
        }
        case Json::value_t::number_float: out += fmt_double(j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

Fourier fourier_from_json(const Json& a, int K) {
    if (!a.is_array() || int(a.size()) != 2 * K + 1) throw ParseError("each coeffs entry needs 2K+1 values");
    Fourier f(K);
    for (int k = -K; k <= K; ++k) f[k] = cplx_from_json(a[std::size_t(k + K)]);
    return f;
}

}  // namespace

std::string dump(const Json& j, int indent) {
    std::string out;
    dump_rec(j, indent, 0, out);
    out += "\n";
    return out;
}

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ParseError("expected a number or [re, im], got " + j.dump());
}

Json to_json(const Potential& p) {
    const int K = p.order();
    Json coeffs = Json::array();
    for (const auto& f : p.psi) {
        Json c = Json::array();
        for (int k = -K; k <= K; ++k) c.push_back(to_json(f[k]));
        coeffs.push_back(c);
    }
    return Json{{"K", K}, {"coeffs", coeffs}};
}

Json to_json(const SingleExp& s) {
    return Json{{"singleexp",
                 Json{{"sigma", s.sigma}, {"omega", s.omega}, {"alpha", to_json(s.alpha)}, {"c", to_json(s.c)}}}};
}

Json to_json(const LabeledEigenvalue& e) {
    const char* sign = e.sign < 0 ? "-" : e.sign > 0 ? "+" : "none";
    return Json{{"kind", to_string(e.kind)}, {"i", e.i},           {"n", e.n},
                {"sign", sign},              {"value", to_json(e.value)}, {"mult", e.mult},
                {"residual", e.residual}};
}

Json to_json(const Spectrum& s) {
    Json ev = Json::array();
    for (const auto& e : s.eigenvalues) ev.push_back(to_json(e));
    return Json{{"kind", to_string(s.kind)}, {"N", s.N}, {"count_in_BN", s.count_in_BN()}, {"eigenvalues", ev}};
}

Json to_json(const ArcPolyline& a) {
    Json smp = Json::array(), dl = Json::array(), w = Json::array();
    for (auto z : a.samples) smp.push_back(to_json(z));
    for (auto d : a.delta) dl.push_back(d);
    for (const auto& s : a.warnings) w.push_back(s);
    return Json{{"n", a.n},
                {"crossing", to_json(a.crossing)},
                {"closed_under_conjugation", a.closed_under_conjugation},
                {"left_rectangle", a.left_rectangle},
                {"samples", smp},
                {"delta", dl},
                {"warnings", w}};
}

Json to_json(const Disc& d) {
    Json j{{"name", d.name()}, {"i", d.i}, {"n", d.n}};
    if (d.type == DiscType::BN) j["N"] = d.N;
    j["center"] = to_json(d.center());
    // D^i_n are circles in 2 lam^2, so store a boundary polyline as well
    Json b = Json::array();
    for (int k = 0; k < 64; ++k) b.push_back(to_json(d.boundary(2 * pi * k / 64, 1.0, nullptr)));
    if (d.type == DiscType::Dn)
        j["radius_w"] = pi / 4;  // radius in w = 2 lam^2
    else
        j["radius"] = radius_BN(d.type == DiscType::D0 ? 0 : d.N);
    j["boundary"] = b;
    return j;
}

Potential potential_from_json(const Json& j) {
    if (j.is_string()) return load_potential(j.get<std::string>());
    if (!j.is_object()) throw ParseError("potential JSON must be an object");
    try {
        if (j.contains("singleexp")) {
            const Json& e = j.at("singleexp");
            SingleExp s;
            s.sigma = e.at("sigma").get<int>();
            if (s.sigma != 1 && s.sigma != -1) throw ParseError("sigma must be +1 or -1");
            s.omega = e.value("omega", -2 * pi);
            const double m = s.omega / (2 * pi);
            if (std::abs(m - std::round(m)) > 1e-9) throw ParseError("omega must lie in 2 pi Z");
            s.omega = 2 * pi * std::round(m);
            s.alpha = cplx_from_json(e.at("alpha"));
            s.c = e.contains("c") ? cplx_from_json(e.at("c")) : cplx{};
            return s.potential();
        }
        const int K = j.at("K").get<int>();
        if (K < 0) throw ParseError("K must be >= 0");
        const Json& co = j.at("coeffs");
        if (!co.is_array() || co.size() != 4) throw ParseError("coeffs needs four components");
        Potential p;
        for (int i = 0; i < 4; ++i) p.psi[i] = fourier_from_json(co[std::size_t(i)], K);
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad potential JSON: ") + e.what());
    }
}

Potential load_potential(const std::string& src) {
    if (src == "zero") return Potential::zero();
    if (src.rfind("figure:", 0) == 0) {
        try {
            return figure_params(src.substr(7)).potential();
        } catch (const std::exception& e) {
            throw ParseError(e.what());
        }
    }
    if (src.rfind("random:", 0) == 0) {
        int K = 3;
        double norm = 1.0;
        unsigned long long seed = 1;
        if (std::sscanf(src.c_str(), "random:%d:%lf:%llu", &K, &norm, &seed) < 1 || K < 0 || norm < 0)
            throw ParseError("expected random:K:norm:seed");
        std::mt19937_64 rng(seed);
        return Potential::random(K, norm, rng);
    }
    const std::string text = (!src.empty() && src[0] == '{') ? src : read_file(src);
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("cannot parse potential: " + std::string(e.what()));
    }
    return potential_from_json(j);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace zst
