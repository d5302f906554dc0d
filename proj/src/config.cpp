#include "valprof/config.hpp"

#include <fstream>
#include <sstream>

#include "valprof/errors.hpp"

namespace valprof {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Parser {
    std::string origin;
    int line_no = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream out;
        out << origin << ":" << line_no << ": " << msg;
        throw ConfigError(out.str());
    }

    double number(const std::string& v) const {
        try {
            std::size_t pos = 0;
            const double x = std::stod(v, &pos);
            if (pos != v.size()) fail("trailing characters in number: " + v);
            return x;
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            fail("not a number: " + v);
        }
    }

    int integer(const std::string& v) const {
        const double x = number(v);
        const int i = static_cast<int>(x);
        if (static_cast<double>(i) != x) fail("not an integer: " + v);
        return i;
    }

    std::uint64_t unsigned64(const std::string& v) const {
        try {
            std::size_t pos = 0;
            const std::uint64_t x = std::stoull(v, &pos);
            if (pos != v.size()) fail("trailing characters in integer: " + v);
            return x;
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            fail("not an unsigned integer: " + v);
        }
    }

    std::vector<std::string> name_list(const std::string& v) const {
        std::vector<std::string> out;
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) out.push_back(item);
        }
        if (out.empty()) fail("empty list");
        return out;
    }
};

}  // namespace

FullConfig parse_config(std::istream& in, const std::string& origin) {
    FullConfig cfg;
    Parser p{origin, 0};
    std::string section;
    std::string line;

    while (std::getline(in, line)) {
        ++p.line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') p.fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "task" && section != "model" && section != "experiment" &&
                section != "simulate" && section != "agents.M1" && section != "agents.M2" &&
                section != "agents.M3" && section != "agents.EpsGreedy" &&
                section != "agents.SoftmaxQ")
                p.fail("unknown section: [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) p.fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) p.fail("expected key = value");
        if (section.empty()) p.fail("key outside any section: " + key);

        if (section == "task") {
            if (key == "n_trials") cfg.task.n_trials = p.integer(val);
            else if (key == "context_block_len") cfg.task.context_block_len = p.integer(val);
            else if (key == "volatile_arm_switch_period")
                cfg.task.volatile_arm_switch_period = p.integer(val);
            else if (key == "p_reward_volatile_good") cfg.task.p_reward_volatile.good = p.number(val);
            else if (key == "p_reward_volatile_bad") cfg.task.p_reward_volatile.bad = p.number(val);
            else if (key == "p_reward_stable_good") cfg.task.p_reward_stable.good = p.number(val);
            else if (key == "p_reward_stable_bad") cfg.task.p_reward_stable.bad = p.number(val);
            else if (key == "hint_accuracy") cfg.task.hint_accuracy = p.number(val);
            else p.fail("unknown key in [task]: " + key);
        } else if (section == "model") {
            if (key == "ctx_stay") cfg.hyper.ctx_stay = p.number(val);
            else if (key == "arm_stay") cfg.hyper.arm_stay = p.number(val);
            else p.fail("unknown key in [model]: " + key);
        } else if (section == "experiment") {
            if (key == "base_seed") cfg.base_seed = p.unsigned64(val);
            else if (key == "runs_per_generator") cfg.runs_per_generator = p.integer(val);
            else if (key == "generators") cfg.generator_names = p.name_list(val);
            else if (key == "jobs") cfg.jobs = p.integer(val);
            else p.fail("unknown key in [experiment]: " + key);
        } else if (section == "simulate") {
            if (key == "generator") cfg.simulate_generator = val;
            else if (key == "runs") cfg.simulate_runs = p.integer(val);
            else p.fail("unknown key in [simulate]: " + key);
        } else if (section == "agents.M1") {
            if (key == "gamma") cfg.m1.gamma = p.number(val);
            else p.fail("unknown key in [agents.M1]: " + key);
        } else if (section == "agents.M2") {
            if (key == "gamma_base") cfg.m2.gamma_base = p.number(val);
            else if (key == "kappa") cfg.m2.kappa = p.number(val);
            else p.fail("unknown key in [agents.M2]: " + key);
        } else if (section == "agents.M3") {
            if (key == "gamma0") cfg.m3.gamma0 = p.number(val);
            else if (key == "gamma1") cfg.m3.gamma1 = p.number(val);
            else if (key == "hint_scale") cfg.m3.hint_scale = p.number(val);
            else if (key == "arm_scale") cfg.m3.arm_scale = p.number(val);
            else p.fail("unknown key in [agents.M3]: " + key);
        } else if (section == "agents.EpsGreedy") {
            if (key == "epsilon") cfg.eps_greedy.epsilon = p.number(val);
            else if (key == "alpha") cfg.eps_greedy.alpha = p.number(val);
            else p.fail("unknown key in [agents.EpsGreedy]: " + key);
        } else if (section == "agents.SoftmaxQ") {
            if (key == "beta") cfg.softmax_q.beta = p.number(val);
            else if (key == "alpha") cfg.softmax_q.alpha = p.number(val);
            else p.fail("unknown key in [agents.SoftmaxQ]: " + key);
        }
    }

    // Fail fast on anything structurally wrong before the caller starts
    // producing output. (Experiment-only constraints such as fold
    // divisibility are checked when the experiment is actually built.)
    cfg.task.validate();
    for (const std::string& name : cfg.generator_names) cfg.agent_by_name(name).validate();
    cfg.agent_by_name(cfg.simulate_generator).validate();
    if (cfg.simulate_runs <= 0) throw ConfigError("simulate: runs must be positive");
    if (cfg.runs_per_generator <= 0)
        throw ConfigError("experiment: runs_per_generator must be positive");
    if (cfg.jobs < 0) throw ConfigError("experiment: jobs must be >= 0");
    return cfg;
}

FullConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config(in, path);
}

AgentSpec FullConfig::agent_by_name(const std::string& name) const {
    switch (agent_kind_from_string(name)) {
        case AgentKind::kM1: return AgentSpec::m1(m1);
        case AgentKind::kM2: return AgentSpec::m2(m2);
        case AgentKind::kM3: return AgentSpec::m3(m3);
        case AgentKind::kEpsGreedy: return AgentSpec::eps_greedy(eps_greedy);
        case AgentKind::kSoftmaxQ: return AgentSpec::softmax_q(softmax_q);
    }
    throw ConfigError("unknown agent: " + name);
}

ExperimentConfig FullConfig::experiment() const {
    ExperimentConfig e;
    e.task = task;
    e.hyper = hyper;
    for (const std::string& name : generator_names)
        e.generators.push_back(agent_by_name(name));
    e.runs_per_generator = runs_per_generator;
    e.base_seed = base_seed;
    e.jobs = jobs;
    e.validate();
    return e;
}

void write_config(const FullConfig& c, std::ostream& out) {
    out << "# two-armed bandit with latent volatility context\n";
    out << "[task]\n";
    out << "n_trials = " << c.task.n_trials << "\n";
    out << "context_block_len = " << c.task.context_block_len << "\n";
    out << "volatile_arm_switch_period = " << c.task.volatile_arm_switch_period << "\n";
    out << "p_reward_volatile_good = " << c.task.p_reward_volatile.good << "\n";
    out << "p_reward_volatile_bad = " << c.task.p_reward_volatile.bad << "\n";
    out << "p_reward_stable_good = " << c.task.p_reward_stable.good << "\n";
    out << "p_reward_stable_bad = " << c.task.p_reward_stable.bad << "\n";
    out << "hint_accuracy = " << c.task.hint_accuracy << "\n";
    out << "\n[model]\n";
    out << "ctx_stay = " << c.hyper.ctx_stay << "\n";
    out << "arm_stay = " << c.hyper.arm_stay << "\n";
    out << "\n[experiment]\n";
    out << "base_seed = " << c.base_seed << "\n";
    out << "runs_per_generator = " << c.runs_per_generator << "\n";
    out << "generators = ";
    for (std::size_t i = 0; i < c.generator_names.size(); ++i)
        out << (i ? ", " : "") << c.generator_names[i];
    out << "\n";
    out << "jobs = " << c.jobs << "\n";
    out << "\n[simulate]\n";
    out << "generator = " << c.simulate_generator << "\n";
    out << "runs = " << c.simulate_runs << "\n";
    out << "\n[agents.M1]\n";
    out << "gamma = " << c.m1.gamma << "\n";
    out << "\n[agents.M2]\n";
    out << "gamma_base = " << c.m2.gamma_base << "\n";
    out << "kappa = " << c.m2.kappa << "\n";
    out << "\n[agents.M3]\n";
    out << "gamma0 = " << c.m3.gamma0 << "\n";
    out << "gamma1 = " << c.m3.gamma1 << "\n";
    out << "hint_scale = " << c.m3.hint_scale << "\n";
    out << "arm_scale = " << c.m3.arm_scale << "\n";
    out << "\n[agents.EpsGreedy]\n";
    out << "epsilon = " << c.eps_greedy.epsilon << "\n";
    out << "alpha = " << c.eps_greedy.alpha << "\n";
    out << "\n[agents.SoftmaxQ]\n";
    out << "beta = " << c.softmax_q.beta << "\n";
    out << "alpha = " << c.softmax_q.alpha << "\n";
}

void save_config(const FullConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw RuntimeError("cannot write config file: " + path);
    write_config(config, out);
    if (!out.good()) throw RuntimeError("failed writing config file: " + path);
}

}  // namespace valprof
