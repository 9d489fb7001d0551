#include "pmhd/config.hpp"

#include "pmhd/errors.hpp"
#include "pmhd/operators.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace pmhd {
namespace {

namespace pt = boost::property_tree;

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Typed access to one INI section; unknown keys and bad values become errors.
class Section {
public:
    Section(std::string name, const pt::ptree* tree, std::vector<std::string>& errors)
        : name_(std::move(name)), tree_(tree), errors_(errors) {}

    bool has(const std::string& key) const { return tree_ && tree_->find(key) != tree_->not_found(); }

    std::optional<std::string> raw(const std::string& key) {
        used_.insert(key);
        if (!has(key)) return std::nullopt;
        return tree_->get<std::string>(key);
    }

    double real(const std::string& key, double fallback) {
        const auto s = raw(key);
        if (!s) return fallback;
        char* end = nullptr;
        const double v = std::strtod(s->c_str(), &end);
        if (s->empty() || *end != '\0' || !std::isfinite(v)) {
            errors_.push_back(where(key) + ": expected a finite number, got '" + *s + "'");
            return fallback;
        }
        return v;
    }

    long integer(const std::string& key, long fallback) {
        const auto s = raw(key);
        if (!s) return fallback;
        char* end = nullptr;
        const long v = std::strtol(s->c_str(), &end, 10);
        if (s->empty() || *end != '\0') {
            errors_.push_back(where(key) + ": expected an integer, got '" + *s + "'");
            return fallback;
        }
        return v;
    }

    std::uint64_t unsignedInteger(const std::string& key, std::uint64_t fallback) {
        const auto s = raw(key);
        if (!s) return fallback;
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s->c_str(), &end, 10);
        if (s->empty() || *end != '\0' || (*s)[0] == '-') {
            errors_.push_back(where(key) + ": expected a non-negative integer, got '" + *s + "'");
            return fallback;
        }
        return v;
    }

    bool boolean(const std::string& key, bool fallback) {
        const auto s = raw(key);
        if (!s) return fallback;
        if (*s == "true" || *s == "1" || *s == "yes") return true;
        if (*s == "false" || *s == "0" || *s == "no") return false;
        errors_.push_back(where(key) + ": expected true or false, got '" + *s + "'");
        return fallback;
    }

    std::string word(const std::string& key, const std::string& fallback, std::initializer_list<const char*> allowed) {
        const auto s = raw(key);
        if (!s) return fallback;
        for (const char* a : allowed)
            if (*s == a) return *s;
        std::string list;
        for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
        errors_.push_back(where(key) + ": expected one of {" + list + "}, got '" + *s + "'");
        return fallback;
    }

    std::string text(const std::string& key, const std::string& fallback) {
        const auto s = raw(key);
        return s ? *s : fallback;
    }

    std::optional<std::vector<double>> list(const std::string& key) {
        const auto s = raw(key);
        if (!s) return std::nullopt;
        std::istringstream is(*s);
        std::vector<double> out;
        std::string tok;
        while (is >> tok) {
            char* end = nullptr;
            const double v = std::strtod(tok.c_str(), &end);
            if (*end != '\0' || !std::isfinite(v)) {
                errors_.push_back(where(key) + ": bad number '" + tok + "'");
                return std::nullopt;
            }
            out.push_back(v);
        }
        return out;
    }

    void reportUnknown() const {
        if (!tree_) return;
        for (const auto& kv : *tree_)
            if (!used_.count(kv.first)) errors_.push_back("[" + name_ + "] " + kv.first + ": unknown key");
    }

private:
    std::string where(const std::string& key) const { return "[" + name_ + "] " + key; }

    std::string name_;
    const pt::ptree* tree_;
    std::vector<std::string>& errors_;
    std::set<std::string> used_;
};

const pt::ptree* child(const pt::ptree& root, const std::string& name) {
    const auto it = root.find(name);
    return it == root.not_found() ? nullptr : &it->second;
}

bool isBodySection(const std::string& name, int* index) {
    if (name.rfind("body", 0) != 0 || name.size() == 4) return false;
    for (std::size_t k = 4; k < name.size(); ++k)
        if (name[k] < '0' || name[k] > '9') return false;
    *index = std::atoi(name.c_str() + 4);
    return true;
}

void need(std::vector<std::string>& errors, bool ok, const std::string& cond, const std::string& got) {
    if (!ok) errors.push_back("violated condition: " + cond + " (got " + got + ")");
}

}  // namespace

CharacteristicScales ScalesSpec::close() const {
    return fromVelocity ? closeScalesFromVelocity(xbar, ubar, jbar, material, free)
                        : closeScales(xbar, tbar, Bbar, material, free);
}

RunConfig parseConfig(const std::string& text) {
    pt::ptree root;
    try {
        std::istringstream is(text);
        pt::read_ini(is, root);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }

    std::vector<std::string> errors;
    RunConfig c;

    for (const auto& kv : root) {
        int idx = 0;
        const std::string& n = kv.first;
        if (kv.second.empty() && !kv.second.data().empty())
            errors.push_back("key '" + n + "' outside of any section");
        else if (n != "grid" && n != "scheme" && n != "forces" && n != "initial" && n != "scales" &&
                 n != "output" && n != "run" && n != "metadata" && n != "nondim" && !isBodySection(n, &idx))
            errors.push_back("[" + n + "]: unknown section");
    }

    {
        Section s("grid", child(root, "grid"), errors);
        c.grid.nx = static_cast<int>(s.integer("nx", 32));
        c.grid.ny = static_cast<int>(s.integer("ny", c.grid.nx));
        const double lx = s.real("lx", 1.0);
        const double ly = s.real("ly", lx);
        c.grid.x0 = s.real("x0", 0.0);
        c.grid.y0 = s.real("y0", 0.0);
        need(errors, c.grid.nx >= 4 && c.grid.ny >= 4, "nx, ny >= 4",
             "nx = " + std::to_string(c.grid.nx) + ", ny = " + std::to_string(c.grid.ny));
        need(errors, lx > 0.0 && ly > 0.0, "lx, ly > 0", "lx = " + g17(lx) + ", ly = " + g17(ly));
        c.lx = lx;
        c.ly = ly;
        c.grid.dx = c.grid.nx > 0 ? lx / c.grid.nx : 0.0;
        c.grid.dy = c.grid.ny > 0 ? ly / c.grid.ny : 0.0;
        s.reportUnknown();
    }
    {
        Section s("scheme", child(root, "scheme"), errors);
        SchemeParams& p = c.params;
        p.nu = s.real("nu", p.nu);
        p.lambda = s.real("lambda", p.lambda);
        p.a = s.real("a", p.a);
        p.gamma = s.real("gamma", p.gamma);
        p.sigma = s.real("sigma", p.sigma);
        p.mu = s.real("mu", p.mu);
        p.dt = s.real("dt", p.dt);
        p.m = s.real("m", p.m);
        c.epsDefaulted = !s.has("eps");
        p.eps = s.real("eps", p.dt);
        p.alpha = s.real("alpha", p.alpha);
        p.beta = s.real("beta", p.beta);
        p.delta = s.real("delta", p.delta);
        p.picardTol = s.real("picard_tol", p.picardTol);
        p.picardMax = static_cast<int>(s.integer("picard_max", p.picardMax));
        p.innerSubsteps = static_cast<int>(s.integer("inner_substeps", p.innerSubsteps));
        p.freezeMechanics = s.boolean("freeze_mechanics", p.freezeMechanics);
        for (auto& v : p.violations()) errors.push_back(v);
        s.reportUnknown();
    }
    {
        Section s("forces", child(root, "forces"), errors);
        c.gravity = {s.real("gravity_x", 0.0), s.real("gravity_y", 0.0)};
        c.current.kind = s.word("current", "none", {"none", "uniform"});
        c.current.value = s.real("current_value", 0.0);
        s.reportUnknown();
    }
    {
        Section s("initial", child(root, "initial"), errors);
        InitialSpec& in = c.initial;
        in.rho0 = s.real("rho0", in.rho0);
        in.velocity = s.word("velocity", in.velocity, {"rest", "rigid", "vortex"});
        in.u0 = s.real("u0", in.u0);
        in.field = s.word("field", in.field, {"none", "sine", "linear"});
        in.b0 = s.real("b0", in.b0);
        in.noise = s.real("noise", in.noise);
        if (auto v = s.list("vacuum")) {
            if (v->size() != 4 || (*v)[0] >= (*v)[1] || (*v)[2] >= (*v)[3])
                errors.push_back("[initial] vacuum: expected 'x0 x1 y0 y1' with x0 < x1 and y0 < y1");
            else
                in.vacuum = std::array<double, 4>{(*v)[0], (*v)[1], (*v)[2], (*v)[3]};
        }
        need(errors, in.rho0 >= 0.0, "rho0 >= 0", "rho0 = " + g17(in.rho0));
        need(errors, in.noise >= 0.0 && in.noise < 1.0, "0 <= noise < 1", "noise = " + g17(in.noise));
        s.reportUnknown();
    }

    std::map<int, const pt::ptree*> bodies;
    for (const auto& kv : root) {
        int idx = 0;
        if (isBodySection(kv.first, &idx)) bodies[idx] = &kv.second;
    }
    for (const auto& [idx, tree] : bodies) {
        const std::string name = "body" + std::to_string(idx);
        Section s(name, tree, errors);
        RigidBody b;
        b.id = idx;
        const std::string shape = s.word("shape", "disk", {"disk", "rectangle"});
        if (shape == "disk") {
            b.shape = Shape::disk(s.real("radius", 0.1));
            need(errors, b.shape.radius > 0.0, name + ".radius > 0", g17(b.shape.radius));
        } else {
            const double w = s.real("width", 0.2), h = s.real("height", 0.2);
            b.shape = Shape::rectangle(w, h);
            need(errors, w > 0.0 && h > 0.0, name + ".width, height > 0", g17(w) + ", " + g17(h));
        }
        const double angle = s.real("angle", 0.0);
        b.pose = Isometry::fromAngle(angle, {s.real("x", 0.5), s.real("y", 0.5)});
        b.V = {s.real("vx", 0.0), s.real("vy", 0.0)};
        b.w = s.real("w", 0.0);
        b.delta = s.real("delta", c.params.delta);
        need(errors, b.delta >= 0.0, name + ".delta >= 0", g17(b.delta));
        const double rho = s.real("density", std::numeric_limits<double>::quiet_NaN());
        if (!std::isnan(rho)) need(errors, rho > 0.0, name + ".density > 0", g17(rho));
        c.bodies.push_back(b);
        c.bodyDensity.push_back(rho);
        c.bodyAngle.push_back(angle);
        s.reportUnknown();
    }

    if (const pt::ptree* t = child(root, "scales")) {
        Section s("scales", t, errors);
        ScalesSpec sc;
        sc.fromVelocity = s.word("closure", "time", {"time", "velocity"}) == "velocity";
        sc.xbar = s.real("xbar", 0.0);
        sc.tbar = s.real("tbar", 0.0);
        sc.Bbar = s.real("bbar", 0.0);
        sc.ubar = s.real("ubar", 0.0);
        sc.jbar = s.real("jbar", 0.0);
        sc.material.mu0 = s.real("mu0", sc.material.mu0);
        sc.material.eps0 = s.real("eps0", sc.material.eps0);
        sc.material.mur = s.real("mur", sc.material.mur);
        sc.material.epsr = s.real("epsr", sc.material.epsr);
        sc.material.sigma = s.real("sigma", sc.material.sigma);
        sc.free.rhobar = s.real("rhobar", 0.0);
        sc.free.pbar = s.real("pbar", 0.0);
        sc.free.gbar = s.real("gbar", 0.0);
        sc.free.Hbar = s.real("hbar", 0.0);
        sc.free.Dbar = s.real("dbar", 0.0);
        sc.thresholds.speedHolds = s.real("speed_holds", sc.thresholds.speedHolds);
        sc.thresholds.speedMarginal = s.real("speed_marginal", sc.thresholds.speedMarginal);
        sc.thresholds.materialHolds = s.real("material_holds", sc.thresholds.materialHolds);
        sc.thresholds.materialMarginal = s.real("material_marginal", sc.thresholds.materialMarginal);
        s.reportUnknown();
        try {
            sc.close();
            c.scales = sc;
        } catch (const Error& e) {
            errors.push_back(std::string("[scales] ") + e.what());
        }
    }
    {
        Section s("output", child(root, "output"), errors);
        c.outDir = s.text("dir", c.outDir);
        c.snapshots = s.boolean("snapshots", c.snapshots);
        s.reportUnknown();
    }
    {
        Section s("run", child(root, "run"), errors);
        c.steps = s.integer("steps", c.steps);
        c.seed = s.unsignedInteger("seed", c.seed);
        c.slackTolerance = s.real("slack_tolerance", c.slackTolerance);
        need(errors, c.steps >= 0, "steps >= 0", std::to_string(c.steps));
        need(errors, c.slackTolerance >= 0.0, "slack_tolerance >= 0", g17(c.slackTolerance));
        s.reportUnknown();
    }

    if (!errors.empty()) {
        std::string msg;
        for (const auto& e : errors) msg += (msg.empty() ? "" : "\n") + e;
        throw ConfigError(msg);
    }
    return c;
}

InitialData buildInitialData(const RunConfig& c) {
    const Grid& g = c.grid;
    const InitialSpec& in = c.initial;
    InitialData d;

    ScalarField rho(g, Location::Center, in.rho0);
    if (in.noise > 0.0) {
        std::mt19937_64 rng(c.seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (double& v : rho.values()) v *= 1.0 + in.noise * u(rng);
    }
    for (std::size_t k = 0; k < c.bodies.size(); ++k) {
        if (std::isnan(c.bodyDensity[k])) continue;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                if (c.bodies[k].signedDistance(rho.position(i, j)) > 0.0) rho(i, j) = c.bodyDensity[k];
    }
    if (in.vacuum) {
        const auto& b = *in.vacuum;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const Point p = rho.position(i, j);
                if (p[0] >= b[0] && p[0] <= b[1] && p[1] >= b[2] && p[1] <= b[3]) rho(i, j) = 0.0;
            }
    }

    VectorField u(g);
    const double lx = g.lengthX(), ly = g.lengthY();
    if (in.velocity == "vortex") {
        const double pi = std::numbers::pi;
        const ScalarField stream = ScalarField::sample(g, Location::Node, [&](double x, double y) {
            const double sx = std::sin(pi * (x - g.x0) / lx), sy = std::sin(pi * (y - g.y0) / ly);
            return in.u0 * lx / pi * sx * sx * sy * sy;
        });
        u = gradPerp(stream);
    } else if (in.velocity == "rigid") {
        for (const auto& b : c.bodies) {
            const VectorField rv = rigidVelocityField(g, b.V, b.w, b.pose.b);
            for (ScalarField* comp : {&u.x(), &u.y()}) {
                const ScalarField& src = comp == &u.x() ? rv.x() : rv.y();
                for (int j = 0; j < comp->sizeJ(); ++j)
                    for (int i = 0; i < comp->sizeI(); ++i)
                        if (b.signedDistance(comp->position(i, j)) > 0.0) (*comp)(i, j) = src(i, j);
            }
        }
    }
    u.zeroNormalOnBoundary();

    long zeroed = 0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i)
            if ((rho(i - 1, j) == 0.0 || rho(i, j) == 0.0) && u.x()(i, j) != 0.0) {
                u.x()(i, j) = 0.0;
                ++zeroed;
            }
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if ((rho(i, j - 1) == 0.0 || rho(i, j) == 0.0) && u.y()(i, j) != 0.0) {
                u.y()(i, j) = 0.0;
                ++zeroed;
            }
    if (zeroed > 0)
        d.warnings.push_back("initial momentum (rho u)0 set to 0 on " + std::to_string(zeroed) +
                             " faces where rho0 = 0");

    ScalarField psi(g, Location::Node);
    if (in.field == "sine") {
        const double pi = std::numbers::pi;
        psi = ScalarField::sample(g, Location::Node, [&](double x, double y) {
            return in.b0 * std::sin(pi * (x - g.x0) / lx) * std::sin(pi * (y - g.y0) / ly);
        });
        // exact zeros on the walls
        for (int i = 0; i <= g.nx; ++i) psi(i, 0) = psi(i, g.ny) = 0.0;
        for (int j = 0; j <= g.ny; ++j) psi(0, j) = psi(g.nx, j) = 0.0;
    } else if (in.field == "linear") {
        psi = ScalarField::sample(g, Location::Node, [&](double, double y) { return in.b0 * (y - g.y0); });
    }

    d.mech = MechanicalState{rho, u, c.bodies, 0.0};
    d.mag = MagneticState{psi, 0};
    d.forces.gravity = c.gravity;
    if (c.current.kind == "uniform") d.forces.current = ScalarField(g, Location::Node, c.current.value);
    return d;
}

RunConfig validateConfig(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    RunConfig c = parseConfig(ss.str());

    std::vector<std::string> errors;
    if (!c.bodies.empty()) {
        try {
            checkBodyConfiguration(c.grid, c.bodies);
        } catch (const InvariantError& e) {
            errors.push_back(std::string("violated condition: bodies disjoint and away from the walls (") + e.what() +
                             ")");
        }
    }
    const InitialData d = buildInitialData(c);
    const double var = d.mag.boundaryVariation();
    need(errors, var <= 1e-12 * std::max(1.0, d.mag.psi.maxAbs()), "B0 . n = 0 on the boundary",
         "boundary potential varies by " + g17(var));
    if (!errors.empty()) {
        std::string msg;
        for (const auto& e : errors) msg += (msg.empty() ? "" : "\n") + e;
        throw ConfigError(msg);
    }
    c.warnings = d.warnings;
    return c;
}

std::string normalizedConfig(const RunConfig& c) {
    std::ostringstream os;
    const SchemeParams& p = c.params;
    os << "[grid]\n"
       << "nx = " << c.grid.nx << "\nny = " << c.grid.ny << "\nlx = " << g17(c.lx)
       << "\nly = " << g17(c.ly) << "\nx0 = " << g17(c.grid.x0) << "\ny0 = " << g17(c.grid.y0) << "\n\n";
    os << "[scheme]\n"
       << "nu = " << g17(p.nu) << "\nlambda = " << g17(p.lambda) << "\na = " << g17(p.a) << "\ngamma = " << g17(p.gamma)
       << "\nsigma = " << g17(p.sigma) << "\nmu = " << g17(p.mu) << "\ndt = " << g17(p.dt) << "\nm = " << g17(p.m)
       << "\neps = " << g17(p.eps) << "\nalpha = " << g17(p.alpha) << "\nbeta = " << g17(p.beta)
       << "\ndelta = " << g17(p.delta) << "\npicard_tol = " << g17(p.picardTol) << "\npicard_max = " << p.picardMax
       << "\ninner_substeps = " << p.innerSubsteps << "\nfreeze_mechanics = " << (p.freezeMechanics ? "true" : "false")
       << "\n\n";
    os << "[forces]\n"
       << "gravity_x = " << g17(c.gravity[0]) << "\ngravity_y = " << g17(c.gravity[1]) << "\ncurrent = " << c.current.kind
       << "\ncurrent_value = " << g17(c.current.value) << "\n\n";
    const InitialSpec& in = c.initial;
    os << "[initial]\n"
       << "rho0 = " << g17(in.rho0) << "\nvelocity = " << in.velocity << "\nu0 = " << g17(in.u0) << "\nfield = " << in.field
       << "\nb0 = " << g17(in.b0) << "\nnoise = " << g17(in.noise) << "\n";
    if (in.vacuum) {
        const auto& v = *in.vacuum;
        os << "vacuum = " << g17(v[0]) << ' ' << g17(v[1]) << ' ' << g17(v[2]) << ' ' << g17(v[3]) << "\n";
    }
    os << "\n";
    for (std::size_t k = 0; k < c.bodies.size(); ++k) {
        const RigidBody& b = c.bodies[k];
        os << "[body" << b.id << "]\n";
        if (b.shape.kind == ShapeKind::Disk)
            os << "shape = disk\nradius = " << g17(b.shape.radius) << "\n";
        else
            os << "shape = rectangle\nwidth = " << g17(b.shape.width) << "\nheight = " << g17(b.shape.height) << "\n";
        os << "x = " << g17(b.pose.b[0]) << "\ny = " << g17(b.pose.b[1]) << "\nangle = " << g17(c.bodyAngle[k])
           << "\nvx = " << g17(b.V[0]) << "\nvy = " << g17(b.V[1]) << "\nw = " << g17(b.w) << "\ndelta = " << g17(b.delta)
           << "\n";
        if (!std::isnan(c.bodyDensity[k])) os << "density = " << g17(c.bodyDensity[k]) << "\n";
        os << "\n";
    }
    if (c.scales) {
        const ScalesSpec& s = *c.scales;
        os << "[scales]\nclosure = " << (s.fromVelocity ? "velocity" : "time") << "\nxbar = " << g17(s.xbar);
        if (s.fromVelocity)
            os << "\nubar = " << g17(s.ubar) << "\njbar = " << g17(s.jbar);
        else
            os << "\ntbar = " << g17(s.tbar) << "\nbbar = " << g17(s.Bbar);
        os << "\nmu0 = " << g17(s.material.mu0) << "\neps0 = " << g17(s.material.eps0) << "\nmur = " << g17(s.material.mur)
           << "\nepsr = " << g17(s.material.epsr) << "\nsigma = " << g17(s.material.sigma)
           << "\nrhobar = " << g17(s.free.rhobar) << "\npbar = " << g17(s.free.pbar) << "\ngbar = " << g17(s.free.gbar)
           << "\nhbar = " << g17(s.free.Hbar) << "\ndbar = " << g17(s.free.Dbar)
           << "\nspeed_holds = " << g17(s.thresholds.speedHolds) << "\nspeed_marginal = " << g17(s.thresholds.speedMarginal)
           << "\nmaterial_holds = " << g17(s.thresholds.materialHolds)
           << "\nmaterial_marginal = " << g17(s.thresholds.materialMarginal) << "\n\n";
    }
    os << "[output]\ndir = " << c.outDir << "\nsnapshots = " << (c.snapshots ? "true" : "false") << "\n\n";
    os << "[run]\nsteps = " << c.steps << "\nseed = " << c.seed << "\nslack_tolerance = " << g17(c.slackTolerance) << "\n";
    return os.str();
}

}  // namespace pmhd
