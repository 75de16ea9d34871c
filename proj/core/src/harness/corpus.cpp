#include "nnsel/harness/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "nnsel/error.hpp"
#include "nnsel/fol/tptp.hpp"

namespace nnsel::harness {

namespace {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

std::string pad(std::size_t i, int width = 3) {
  std::string s = std::to_string(i);
  return std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(s.size()))), '0') + s;
}

struct Unit {
  std::string name, role, kind, body;  // kind is cnf or fof
  std::string line() const { return kind + "(" + name + ", " + role + ", (" + body + "))."; }
};

std::string join(const std::vector<Unit>& units) {
  std::string out;
  for (const Unit& u : units) out += u.line() + "\n";
  return out;
}

// ---- ordered chains ------------------------------------------------------

const char* kTransitivity = "~lt(X,Y) | ~lt(Y,Z) | lt(X,Z)";

void chain_family(Rng& rng, std::vector<CorpusProblem>& out) {
  for (std::size_t k = 0; k < 40; ++k) {
    const std::size_t n = 3 + pick(rng, 26);
    std::vector<Unit> units;
    std::vector<Unit> facts;
    for (std::size_t i = 0; i < n; ++i)
      facts.push_back({"f" + std::to_string(i), "axiom", "cnf", "lt(c" + std::to_string(i) + ",c" + std::to_string(i + 1) + ")"});
    std::size_t i = pick(rng, n), j = i + 1 + pick(rng, n - i);
    std::string goal = "lt(c" + std::to_string(i) + ",c" + std::to_string(j) + ")";
    switch (k % 4) {
      case 0:
        units.push_back({"transitivity", "axiom", "cnf", kTransitivity});
        units.insert(units.end(), facts.begin(), facts.end());
        break;
      case 1:
        std::shuffle(facts.begin(), facts.end(), rng);
        units.push_back({"transitivity", "axiom", "fof", "![X,Y,Z]: ((lt(X,Y) & lt(Y,Z)) => lt(X,Z))"});
        units.insert(units.end(), facts.begin(), facts.end());
        for (std::size_t e = 0; e < 3; ++e)
          units.push_back({"g" + std::to_string(e), "axiom", "cnf", "lt(e" + std::to_string(e) + ",e" + std::to_string(e + 1) + ")"});
        break;
      case 2:
        // Backwards goal: not entailed, the search saturates.
        units.push_back({"transitivity", "axiom", "cnf", kTransitivity});
        units.push_back({"irreflexive", "axiom", "cnf", "~lt(X,X)"});
        units.insert(units.end(), facts.begin(), facts.end());
        goal = "lt(c" + std::to_string(j) + ",c" + std::to_string(i) + ")";
        break;
      default: {
        // Two chains joined by a bridge.
        units.push_back({"transitivity", "axiom", "cnf", kTransitivity});
        units.insert(units.end(), facts.begin(), facts.end());
        const std::size_t m = 2 + pick(rng, 6);
        for (std::size_t e = 0; e < m; ++e)
          units.push_back({"g" + std::to_string(e), "axiom", "cnf", "lt(e" + std::to_string(e) + ",e" + std::to_string(e + 1) + ")"});
        units.push_back({"bridge", "axiom", "cnf", "lt(c" + std::to_string(n) + ",e0)"});
        goal = "lt(c" + std::to_string(i) + ",e" + std::to_string(1 + pick(rng, m)) + ")";
        break;
      }
    }
    units.push_back({"goal", "conjecture", "fof", goal});
    out.push_back({"chain_" + pad(k), "chain", join(units)});
  }
}

// ---- groups over a product predicate p(X,Y,Z): X*Y = Z --------------------

std::vector<Unit> group_axioms() {
  return {
      {"closure", "axiom", "cnf", "p(X,Y,mult(X,Y))"},
      {"left_identity", "axiom", "cnf", "p(e,X,X)"},
      {"left_inverse", "axiom", "cnf", "p(inv(X),X,e)"},
      {"assoc1", "axiom", "cnf", "~p(X,Y,U) | ~p(Y,Z,V) | ~p(U,Z,W) | p(X,V,W)"},
      {"assoc2", "axiom", "cnf", "~p(X,Y,U) | ~p(Y,Z,V) | ~p(X,V,W) | p(U,Z,W)"},
  };
}

void group_family(std::vector<CorpusProblem>& out) {
  struct Exercise {
    std::vector<std::string> hypotheses;
    std::string goal;
  };
  const std::vector<Exercise> exercises = {
      {{}, "p(a,e,a)"},
      {{}, "p(a,inv(a),e)"},
      {{}, "p(inv(inv(a)),e,a)"},
      {{"p(a,b,c)"}, "p(inv(a),c,b)"},
      {{"p(a,b,c)"}, "p(c,inv(b),a)"},
      {{"p(a,b,e)"}, "p(b,a,e)"},
      {{}, "p(inv(e),a,a)"},
      {{"p(X,X,e)", "p(a,b,c)"}, "p(b,a,c)"},
      {{}, "p(inv(a),inv(inv(a)),e)"},
      {{"p(a,b,e)"}, "p(inv(a),e,b)"},
  };
  const std::vector<Unit> lemmas = {
      {"right_identity", "axiom", "cnf", "p(X,e,X)"},
      {"right_inverse", "axiom", "cnf", "p(X,inv(X),e)"},
  };
  for (std::size_t g = 0; g < exercises.size(); ++g) {
    for (std::size_t v = 0; v < 3; ++v) {
      std::vector<Unit> units = group_axioms();
      for (std::size_t l = 0; l < v; ++l) units.push_back(lemmas[l]);
      for (std::size_t h = 0; h < exercises[g].hypotheses.size(); ++h)
        units.push_back({"hyp" + std::to_string(h), "hypothesis", "cnf", exercises[g].hypotheses[h]});
      units.push_back({"goal", "conjecture", "fof", exercises[g].goal});
      out.push_back({"group_" + pad(g * 3 + v), "group", join(units)});
    }
  }
}

// ---- set algebra ----------------------------------------------------------

struct SetDef {
  const char* symbol;
  Unit unit;
};

const std::vector<SetDef>& set_definitions() {
  static const std::vector<SetDef> defs = {
      {"union", {"union_def", "axiom", "fof", "![X,A,B]: (member(X,union(A,B)) <=> (member(X,A) | member(X,B)))"}},
      {"intersection",
       {"intersection_def", "axiom", "fof", "![X,A,B]: (member(X,intersection(A,B)) <=> (member(X,A) & member(X,B)))"}},
      {"difference",
       {"difference_def", "axiom", "fof", "![X,A,B]: (member(X,difference(A,B)) <=> (member(X,A) & ~member(X,B)))"}},
      {"empty_set", {"empty_def", "axiom", "fof", "![X]: ~member(X,empty_set)"}},
  };
  return defs;
}

void set_family(std::vector<CorpusProblem>& out) {
  const std::vector<std::string> goals = {
      "subset(a,union(a,b))",
      "subset(intersection(a,b),a)",
      "subset(intersection(a,b),intersection(b,a))",
      "subset(union(a,b),union(b,a))",
      "subset(difference(a,b),a)",
      "subset(intersection(a,union(b,c)),union(intersection(a,b),intersection(a,c)))",
      "subset(union(intersection(a,b),intersection(a,c)),intersection(a,union(b,c)))",
      "subset(a,a)",
      "(subset(a,b) & subset(b,c)) => subset(a,c)",
      "subset(empty_set,a)",
      "subset(intersection(a,difference(b,a)),empty_set)",
      "subset(union(a,a),a)",
      "subset(a,intersection(a,a))",
      "subset(union(a,b),a)",
      "subset(a,intersection(a,b))",
      "subset(a,b) => subset(intersection(a,c),intersection(b,c))",
      "subset(a,b) => subset(union(a,c),union(b,c))",
      "subset(difference(a,union(b,c)),difference(a,b))",
      "subset(union(a,union(b,c)),union(union(a,b),c))",
      "subset(intersection(intersection(a,b),c),intersection(a,intersection(b,c)))",
  };
  const Unit subset_def{"subset_def", "axiom", "fof", "![A,B]: (subset(A,B) <=> ![X]: (member(X,A) => member(X,B)))"};
  for (std::size_t g = 0; g < goals.size(); ++g) {
    for (std::size_t v = 0; v < 2; ++v) {
      std::vector<Unit> units{subset_def};
      for (const SetDef& d : set_definitions())
        if (v == 1 || goals[g].find(d.symbol) != std::string::npos) units.push_back(d.unit);
      units.push_back({"goal", "conjecture", "fof", goals[g]});
      out.push_back({"set_" + pad(g * 2 + v), "set", join(units)});
    }
  }
}

// ---- pigeonhole -----------------------------------------------------------

void pigeonhole_family(std::vector<CorpusProblem>& out) {
  std::size_t k = 0;
  for (std::size_t holes = 1; holes <= 5; ++holes) {
    for (std::size_t variant = 0; variant < 3; ++variant) {
      const std::size_t pigeons = variant == 1 ? holes : holes + 1;
      std::vector<Unit> units;
      if (variant < 2) {
        for (std::size_t h = 1; h <= holes; ++h)
          for (std::size_t i = 1; i <= pigeons; ++i)
            for (std::size_t j = i + 1; j <= pigeons; ++j)
              units.push_back({"excl_" + std::to_string(h) + "_" + std::to_string(i) + "_" + std::to_string(j), "axiom",
                               "cnf",
                               "~in(p" + std::to_string(i) + ",h" + std::to_string(h) + ") | ~in(p" + std::to_string(j) +
                                   ",h" + std::to_string(h) + ")"});
        for (std::size_t i = 1; i <= pigeons; ++i) {
          std::string body;
          for (std::size_t h = 1; h <= holes; ++h) body += (h > 1 ? " | " : "") + ("in(p" + std::to_string(i) + ",h" + std::to_string(h) + ")");
          units.push_back({"placed_" + std::to_string(i), "negated_conjecture", "cnf", body});
        }
      } else {
        // First-order encoding: every pigeon sits in some hole, distinct
        // pigeons never share one.
        for (std::size_t i = 1; i <= pigeons; ++i) units.push_back({"pigeon_" + std::to_string(i), "axiom", "cnf", "pigeon(p" + std::to_string(i) + ")"});
        for (std::size_t i = 1; i <= pigeons; ++i)
          for (std::size_t j = i + 1; j <= pigeons; ++j)
            units.push_back({"distinct_" + std::to_string(i) + "_" + std::to_string(j), "axiom", "cnf",
                             "distinct(p" + std::to_string(i) + ",p" + std::to_string(j) + ")"});
        units.push_back({"exclusive", "axiom", "fof", "![X,Y,H]: ((in(X,H) & in(Y,H)) => ~distinct(X,Y))"});
        std::string some;
        for (std::size_t h = 1; h <= holes; ++h) some += (h > 1 ? " | " : "") + ("in(P,h" + std::to_string(h) + ")");
        units.push_back({"placement", "conjecture", "fof", "~(![P]: (pigeon(P) => (" + some + ")))"});
      }
      out.push_back({"pigeonhole_" + pad(k++), "pigeonhole", join(units)});
    }
  }
}

// ---- distractor-padded variants -------------------------------------------

std::vector<Unit> distractors(Rng& rng, std::size_t count) {
  std::vector<Unit> out;
  std::size_t id = 0;
  auto add = [&](const std::string& body) { out.push_back({"", "axiom", "cnf", body}); ++id; };
  auto con = [&]() { return "d" + std::to_string(pick(rng, 40)); };
  while (out.size() < count) {
    switch (pick(rng, 8)) {
      case 0: {
        std::string q = "q" + std::to_string(pick(rng, 8));
        add("~" + q + "(X,Y) | ~" + q + "(Y,Z) | " + q + "(X,Z)");
        break;
      }
      case 1:
      case 2: {
        std::string q = "q" + std::to_string(pick(rng, 8));
        add(q + "(" + con() + "," + con() + ")");
        break;
      }
      case 3: {
        std::string a = "k" + std::to_string(pick(rng, 30)), b = "k" + std::to_string(pick(rng, 30));
        add("~" + a + "(X) | " + b + "(X)");
        break;
      }
      case 4:
        add("k" + std::to_string(pick(rng, 30)) + "(" + con() + ")");
        break;
      case 5: {
        std::string q = "q" + std::to_string(pick(rng, 8));
        add("~" + q + "(X,Y) | " + q + "(Y,X)");
        break;
      }
      case 6: {
        std::string a = "q" + std::to_string(pick(rng, 8)), b = "q" + std::to_string(pick(rng, 8));
        std::string k = "k" + std::to_string(pick(rng, 30));
        add("~" + a + "(X,Y) | ~" + k + "(X) | " + b + "(Y,X)");
        break;
      }
      default: {
        std::string t = "t" + std::to_string(pick(rng, 4));
        add(pick(rng, 2) ? "~" + t + "(X) | " + t + "(succ(X))" : t + "(" + con() + ")");
        break;
      }
    }
  }
  return out;
}

void distractor_family(Rng& rng, const CorpusOptions& options, const std::string& prefix,
                       std::vector<CorpusProblem>& out) {
  for (std::size_t k = 0; k < options.distractor_problems; ++k) {
    std::vector<Unit> relevant;
    std::string goal;
    if (k % 2 == 0) {
      // Ordered chain over ten of c0..c19.
      std::vector<std::string> cs;
      for (std::size_t i = 0; i < 20; ++i) cs.push_back("c" + std::to_string(i));
      std::shuffle(cs.begin(), cs.end(), rng);
      relevant.push_back({"", "axiom", "cnf", kTransitivity});
      for (std::size_t i = 0; i < 9; ++i) relevant.push_back({"", "axiom", "cnf", "lt(" + cs[i] + "," + cs[i + 1] + ")"});
      goal = "lt(" + cs[0] + "," + cs[9] + ")";
    } else {
      // Horn chain over ten of h0..h14 applied to one of b0..b9.
      std::vector<std::string> hs;
      for (std::size_t i = 0; i < 15; ++i) hs.push_back("h" + std::to_string(i));
      std::shuffle(hs.begin(), hs.end(), rng);
      std::string b = "b" + std::to_string(pick(rng, 10));
      relevant.push_back({"", "axiom", "cnf", hs[0] + "(" + b + ")"});
      for (std::size_t i = 0; i < 9; ++i) relevant.push_back({"", "axiom", "cnf", "~" + hs[i] + "(X) | " + hs[i + 1] + "(X)"});
      goal = hs[9] + "(" + b + ")";
    }
    std::vector<Unit> units = distractors(rng, options.distractors_per_problem);
    units.insert(units.end(), relevant.begin(), relevant.end());
    std::shuffle(units.begin(), units.end(), rng);
    for (std::size_t i = 0; i < units.size(); ++i) units[i].name = "ax" + pad(i);
    units.push_back({"goal", "conjecture", "fof", goal});
    out.push_back({prefix + "_" + pad(k), "distractor", join(units)});
  }
}

}  // namespace

std::vector<CorpusProblem> generate_corpus(const CorpusOptions& options) {
  Rng rng(options.seed);
  std::vector<CorpusProblem> out;
  chain_family(rng, out);
  group_family(out);
  set_family(out);
  pigeonhole_family(out);
  distractor_family(rng, options, "distractor", out);
  std::sort(out.begin(), out.end(), [](const CorpusProblem& a, const CorpusProblem& b) { return a.name < b.name; });
  return out;
}

std::vector<CorpusProblem> generate_distractor_problems(const CorpusOptions& options, const std::string& prefix) {
  Rng rng(options.seed);
  std::vector<CorpusProblem> out;
  distractor_family(rng, options, prefix, out);
  return out;
}

fol::Problem parse(const CorpusProblem& p) { return fol::parse_tptp(p.text, p.name); }

void write_corpus(const std::filesystem::path& dir, const std::vector<CorpusProblem>& problems) {
  std::filesystem::create_directories(dir);
  for (const CorpusProblem& p : problems) {
    std::ofstream f(dir / (p.name + ".p"), std::ios::binary);
    if (!f) throw Error("cannot write " + (dir / (p.name + ".p")).string());
    f << "% family: " << p.family << "\n" << p.text;
  }
}

std::vector<CorpusProblem> read_corpus(const std::filesystem::path& dir) {
  std::vector<CorpusProblem> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".p") continue;
    std::ifstream f(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << f.rdbuf();
    CorpusProblem p;
    p.name = entry.path().stem().string();
    p.family = p.name.substr(0, p.name.find('_'));
    p.text = buf.str();
    const std::string tag = "% family: ";
    if (p.text.rfind(tag, 0) == 0) {
      const std::size_t eol = p.text.find('\n');
      p.family = p.text.substr(tag.size(), eol - tag.size());
      p.text = eol == std::string::npos ? "" : p.text.substr(eol + 1);
    }
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const CorpusProblem& a, const CorpusProblem& b) { return a.name < b.name; });
  return out;
}

}  // namespace nnsel::harness
