#include "lplab/spaces.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lplab {

EtaSequence::EtaSequence(int n_lo, std::vector<double> values)
    : n_lo_(n_lo), values_(std::move(values)) {
    for (double v : values_)
        if (!(v >= 0.0)) throw std::invalid_argument("EtaSequence: entries must be >= 0");
}

EtaSequence EtaSequence::power(double rate_log2, int n_lo, int n_hi) {
    std::vector<double> v;
    for (int n = n_lo; n <= n_hi; ++n)
        v.push_back(std::exp2(rate_log2 * std::max(n, 0)));
    return EtaSequence(n_lo, std::move(v));
}

EtaSequence EtaSequence::from_function(int n_lo, int n_hi, double (*fn)(int)) {
    std::vector<double> v;
    for (int n = n_lo; n <= n_hi; ++n) v.push_back(fn(n));
    return EtaSequence(n_lo, std::move(v));
}

bool EtaSequence::nonincreasing() const {
    for (std::size_t i = 1; i < values_.size(); ++i)
        if (values_[i] > values_[i - 1] * (1.0 + 1e-12)) return false;
    return true;
}

std::optional<double> EtaSequence::regularity_constant() const {
    double c = 1.0;
    for (std::size_t i = 1; i < values_.size(); ++i) {
        double a = values_[i - 1], b = values_[i];
        if (a <= 0.0) continue;
        if (b <= 0.0) return std::nullopt;
        c = std::max({c, a / b, b / a});
    }
    return c;
}

SpaceSpec SpaceSpec::lebesgue(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lebesgue: p must be in [1, inf]");
    SpaceSpec s;
    s.kind = SpaceKind::Lebesgue;
    s.p = p;
    return s;
}

SpaceSpec SpaceSpec::lorentz(double p, double q) {
    if (!(p >= 1.0) || !(q >= 1.0))
        throw std::invalid_argument("lorentz: parameters must be in [1, inf]");
    SpaceSpec s;
    s.kind = SpaceKind::Lorentz;
    s.p = p;
    s.q = q;
    return s;
}

SpaceSpec SpaceSpec::besov(double sr, double p, double q) {
    SpaceSpec s;
    s.kind = SpaceKind::BesovHom;
    s.s = sr;
    s.p = p;
    s.q = q;
    return s;
}

SpaceSpec SpaceSpec::triebel(double sr, double p, double q) {
    if (std::isinf(q)) throw std::invalid_argument("triebel: q must be finite");
    SpaceSpec s;
    s.kind = SpaceKind::TriebelHom;
    s.s = sr;
    s.p = p;
    s.q = q;
    return s;
}

SpaceSpec SpaceSpec::morrey(double p, double q) {
    if (!(q >= 1.0) || !(q <= p))
        throw std::invalid_argument("morrey: need 1 <= q <= p");
    SpaceSpec s;
    s.kind = SpaceKind::Morrey;
    s.p = p;
    s.q = q;
    return s;
}

SpaceSpec SpaceSpec::besov_over_morrey(double p, double q, double r) {
    SpaceSpec s;
    s.kind = SpaceKind::BesovOverMorrey;
    s.p = p;
    s.q = q;
    s.r = r;
    s.s = 3.0 / p - 1.0;
    return s;
}

SpaceSpec SpaceSpec::fourier_fq(double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("fq: q must be in [1, inf]");
    SpaceSpec s;
    s.kind = SpaceKind::FourierFq;
    s.q = q;
    return s;
}

SpaceSpec SpaceSpec::meta_eta(EtaSequence eta) {
    SpaceSpec s;
    s.kind = SpaceKind::MetaEta;
    s.eta = std::move(eta);
    return s;
}

SpaceSpec SpaceSpec::two_microlocal(double sprime, PointSet set) {
    if (!(sprime > 0.0)) throw std::invalid_argument("micro: s' must be > 0");
    SpaceSpec s;
    s.kind = SpaceKind::TwoMicrolocal;
    s.sprime = sprime;
    s.set = std::move(set);
    return s;
}

SpaceSpec SpaceSpec::derived_cn(SpaceSpec base, int n_weight) {
    SpaceSpec s;
    s.kind = SpaceKind::DerivedCN;
    s.n_weight = n_weight;
    s.base = std::make_shared<const SpaceSpec>(std::move(base));
    return s;
}

SpaceSpec SpaceSpec::derived_bn(SpaceSpec base, int n_weight) {
    SpaceSpec s;
    s.kind = SpaceKind::DerivedBN;
    s.n_weight = n_weight;
    s.base = std::make_shared<const SpaceSpec>(std::move(base));
    return s;
}

namespace {

double parse_number(const std::string& v) {
    if (v == "inf") return kInf;
    return std::stod(v);
}

std::string fmt_number(double v) {
    if (std::isinf(v)) return "inf";
    std::ostringstream os;
    os << v;
    return os.str();
}

// split "a=1,b=2" into key/value pairs (values must not contain commas)
std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& body) {
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("space spec: expected key=value in '" + item + "'");
        out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return out;
}

double get(const std::vector<std::pair<std::string, std::string>>& kv, const std::string& key) {
    for (const auto& [k, v] : kv)
        if (k == key) return parse_number(v);
    throw std::invalid_argument("space spec: missing parameter '" + key + "'");
}

EtaSequence load_eta_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("meta: cannot open eta file '" + path + "'");
    std::vector<std::pair<int, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("n,", 0) == 0) continue;
        std::stringstream ls(line);
        std::string a, b;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',')) continue;
        rows.emplace_back(std::stoi(a), std::stod(b));
    }
    if (rows.empty()) throw std::invalid_argument("meta: empty eta file");
    int lo = rows.front().first;
    std::vector<double> vals;
    for (const auto& [n, v] : rows) {
        if (n != lo + static_cast<int>(vals.size()))
            throw std::invalid_argument("meta: eta file rows must be consecutive in n");
        vals.push_back(v);
    }
    return EtaSequence(lo, std::move(vals));
}

PointSet parse_set(const std::string& v) {
    if (v.rfind("point(", 0) == 0 && v.back() == ')') {
        std::stringstream ss(v.substr(6, v.size() - 7));
        std::string c;
        std::vector<double> x;
        while (std::getline(ss, c, ';')) x.push_back(std::stod(c));
        return PointSet::single_point(x);
    }
    if (v.rfind("plane(", 0) == 0 && v.back() == ')')
        return PointSet::plane(std::stoi(v.substr(6, v.size() - 7)));
    if (v.rfind("file(", 0) == 0 && v.back() == ')') {
        std::ifstream in(v.substr(5, v.size() - 6));
        if (!in) throw std::invalid_argument("micro: cannot open set file");
        PointSet s;
        double a;
        std::vector<double> cur;
        std::string line;
        while (std::getline(in, line)) {
            std::stringstream ls(line);
            cur.clear();
            while (ls >> a) cur.push_back(a);
            if (!cur.empty()) s.points.push_back(cur);
        }
        return s;
    }
    throw std::invalid_argument("micro: unrecognized set '" + v + "'");
}

} // namespace

SpaceSpec parse_space_spec(const std::string& text) {
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string body = colon == std::string::npos ? "" : text.substr(colon + 1);

    if (head == "cn" || head == "bn") {
        // base spec may itself contain ':' and ','; N is split off from the right
        auto marker = body.rfind(",N=");
        if (body.rfind("base=", 0) != 0 || marker == std::string::npos)
            throw std::invalid_argument("space spec: expected " + head + ":base=<spec>,N=<int>");
        SpaceSpec base = parse_space_spec(body.substr(5, marker - 5));
        int nw = std::stoi(body.substr(marker + 3));
        return head == "cn" ? SpaceSpec::derived_cn(std::move(base), nw)
                            : SpaceSpec::derived_bn(std::move(base), nw);
    }

    if (head == "meta") {
        if (body.rfind("eta=", 0) != 0)
            throw std::invalid_argument("space spec: expected meta:eta=<csv-file>");
        return SpaceSpec::meta_eta(load_eta_csv(body.substr(4)));
    }
    if (head == "micro") {
        auto kvpos = body.find(",set=");
        if (body.rfind("sp=", 0) != 0 || kvpos == std::string::npos)
            throw std::invalid_argument("space spec: expected micro:sp=<s'>,set=<set>");
        double sp = std::stod(body.substr(3, kvpos - 3));
        return SpaceSpec::two_microlocal(sp, parse_set(body.substr(kvpos + 5)));
    }

    auto kv = parse_kv(body);
    if (head == "lebesgue") return SpaceSpec::lebesgue(get(kv, "p"));
    if (head == "lorentz") return SpaceSpec::lorentz(get(kv, "p"), get(kv, "q"));
    if (head == "besov") return SpaceSpec::besov(get(kv, "s"), get(kv, "p"), get(kv, "q"));
    if (head == "triebel") return SpaceSpec::triebel(get(kv, "s"), get(kv, "p"), get(kv, "q"));
    if (head == "morrey") return SpaceSpec::morrey(get(kv, "p"), get(kv, "q"));
    if (head == "bom")
        return SpaceSpec::besov_over_morrey(get(kv, "p"), get(kv, "q"), get(kv, "r"));
    if (head == "fq") return SpaceSpec::fourier_fq(get(kv, "q"));
    throw std::invalid_argument("space spec: unknown space '" + head + "'");
}

std::string to_string(const SpaceSpec& spec) {
    switch (spec.kind) {
        case SpaceKind::Lebesgue:
            return "lebesgue:p=" + fmt_number(spec.p);
        case SpaceKind::Lorentz:
            return "lorentz:p=" + fmt_number(spec.p) + ",q=" + fmt_number(spec.q);
        case SpaceKind::BesovHom:
            return "besov:s=" + fmt_number(spec.s) + ",p=" + fmt_number(spec.p) +
                   ",q=" + fmt_number(spec.q);
        case SpaceKind::TriebelHom:
            return "triebel:s=" + fmt_number(spec.s) + ",p=" + fmt_number(spec.p) +
                   ",q=" + fmt_number(spec.q);
        case SpaceKind::Morrey:
            return "morrey:p=" + fmt_number(spec.p) + ",q=" + fmt_number(spec.q);
        case SpaceKind::BesovOverMorrey:
            return "bom:p=" + fmt_number(spec.p) + ",q=" + fmt_number(spec.q) +
                   ",r=" + fmt_number(spec.r);
        case SpaceKind::FourierFq:
            return "fq:q=" + fmt_number(spec.q);
        case SpaceKind::MetaEta:
            return "meta:eta=<window " + std::to_string(spec.eta.n_lo()) + ".." +
                   std::to_string(spec.eta.n_hi()) + ">";
        case SpaceKind::TwoMicrolocal:
            return "micro:sp=" + fmt_number(spec.sprime) + ",set=<" +
                   (spec.set.shape == SetShape::Plane ? "plane" : "points") + ">";
        case SpaceKind::DerivedCN:
            return "cn:base=" + to_string(*spec.base) + ",N=" + std::to_string(spec.n_weight);
        case SpaceKind::DerivedBN:
            return "bn:base=" + to_string(*spec.base) + ",N=" + std::to_string(spec.n_weight);
    }
    return "?";
}

std::optional<double> known_eta_rate_log2(const SpaceSpec& spec) {
    switch (spec.kind) {
        case SpaceKind::Lebesgue:
            if (spec.p == 3.0) return -2.0;
            return std::nullopt;
        case SpaceKind::Lorentz:
            if (spec.p == 3.0) return -2.0;
            return std::nullopt;
        case SpaceKind::BesovHom:
        case SpaceKind::TriebelHom:
            if (std::isinf(spec.p)) return 0.0;          // B^{-1,q}_inf: eta = C
            if (spec.p >= 2.0) return -6.0 / spec.p;     // 2^{-6n/p}
            return -3.0;                                  // 2^{-3n}
        case SpaceKind::Morrey:
            return spec.q >= 2.0 ? -2.0 : -spec.q;       // 4^{-n} resp. 2^{-qn}
        case SpaceKind::BesovOverMorrey:
            return spec.q >= 2.0 ? -6.0 / spec.p : -3.0 * spec.q / spec.p;
        case SpaceKind::FourierFq: {
            if (std::isinf(spec.q)) return -3.0;         // q' = 1
            double qp = spec.q / (spec.q - 1.0);
            if (spec.q == 1.0) return 0.0;
            return -3.0 / qp;                             // 2^{-3n/q'}
        }
        default:
            return std::nullopt;
    }
}

} // namespace lplab
