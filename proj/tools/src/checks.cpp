#include "checks.hpp"

#include "mds/error.hpp"
#include "mds/sample.hpp"

#include <functional>
#include <set>

namespace mds::cli {

std::string CheckSummary::text() const {
  std::string out = name + ": " + std::to_string(instances) + " instances, " + std::to_string(failures) + " mismatches";
  if (!first_failure.empty()) out += "\n  first: " + first_failure;
  return out;
}

namespace {

CheckSummary run(const std::string& name, std::size_t count, const std::function<std::string(std::size_t)>& one) {
  CheckSummary s;
  s.name = name;
  for (std::size_t i = 0; i < count; ++i) {
    std::string why;
    try {
      why = one(i);
    } catch (const std::exception& e) {
      why = e.what();
    }
    ++s.instances;
    if (!why.empty()) {
      ++s.failures;
      if (s.first_failure.empty()) s.first_failure = "instance " + std::to_string(i) + ": " + why;
    }
  }
  return s;
}

std::string points_text(const std::vector<Rational>& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + to_string(p[i]);
  return out + ")";
}

}  // namespace

CheckSummary check_interchange(std::uint64_t seed, std::size_t count) {
  Sampler rng(seed);
  return run("interchange", count, [&](std::size_t) -> std::string {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto arity = static_cast<std::size_t>(rng.uniform(1, 2));
    std::vector<MoorePath> gammas;
    std::vector<Surjection> phis;
    std::vector<Rational> at(arity);
    for (auto& x : at) x = rng.value();
    for (std::size_t i = 0; i < n; ++i) {
      const Rational target = rng.uniform(0, 4) == 0 ? Rational(0) : rng.positive() * 2;
      const Rational source = target == 0 ? Rational(rng.uniform(0, 1)) * rng.positive() : rng.positive() * 2;
      gammas.push_back(rng.moore_path(target, at));
      at = gammas.back().end();
      phis.emplace_back(rng.surjection(source, target));
    }
    MoorePath lhs = reparametrize(moore_compose(gammas), tensor_reparams(phis).map());
    std::vector<MoorePath> parts;
    for (std::size_t i = 0; i < n; ++i) parts.push_back(reparametrize(gammas[i], phis[i].map()));
    return lhs == moore_compose(parts) ? "" : "n = " + std::to_string(n) + ": sides differ";
  });
}

CheckSummary check_scaling(std::uint64_t seed, std::size_t count) {
  Sampler rng(seed);
  return run("scaling", count, [&](std::size_t) -> std::string {
    const int n = rng.uniform(1, 4);
    auto cuts = rng.partition(1, n);
    const Rational scale = rng.positive() * 3;
    std::vector<MoorePath> lhs_parts;
    std::vector<MoorePath> rhs_parts;
    std::vector<Rational> at{rng.value()};
    for (int i = 0; i < n; ++i) {
      const Rational li = cuts[i + 1] - cuts[i];
      MoorePath g = rng.moore_path(1, at);
      at = g.end();
      lhs_parts.push_back(reparametrize(g, mu(li)));
      rhs_parts.push_back(reparametrize(g, mu(li * scale)));
    }
    if (reparametrize(moore_compose(lhs_parts), mu(scale)) == moore_compose(rhs_parts)) return "";
    return "n = " + std::to_string(n) + ", l = " + to_string(scale) + ": sides differ";
  });
}

CheckSummary check_normalized(std::uint64_t seed, std::size_t count) {
  Sampler rng(seed);
  return run("normalized", count, [&](std::size_t) -> std::string {
    std::vector<Rational> at{rng.value()};
    MoorePath p = rng.moore_path(1, at);
    MoorePath q = rng.moore_path(1, p.end());
    const MoorePath halves[] = {reparametrize(p, mu(Rational(1, 2))), reparametrize(q, mu(Rational(1, 2)))};
    return normalized_compose(p, q) == moore_compose(halves) ? "" : "sides differ";
  });
}

std::vector<Rational> eval_word(const std::vector<WordPiece>& word, const Rational& u) {
  Rational lo = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const Rational hi = lo + word[i].share;
    if (u <= hi || i + 1 == word.size()) return word[i].path(word[i].clock.map()((u - lo) / word[i].share));
    lo = hi;
  }
  return {};
}

std::string renormalize_mismatch(const std::vector<WordPiece>& word, const Clock& phi, const Renormalized& r) {
  MoorePath via_word = reparametrize(assemble(r.word), r.clock.map());
  MoorePath via_pieces = assemble(r.pieces);
  std::set<Rational> probes;
  for (const auto& b : phi.map().points()) probes.insert(b.t);
  for (const auto& t : via_word.breakpoints()) probes.insert(t);
  for (const auto& t : via_pieces.breakpoints()) probes.insert(t);
  // Preimages of the word's own cut points under phi.
  Rational cut = 0;
  for (const auto& piece : word) {
    for (const auto& b : piece.clock.map().points()) {
      const Rational u = cut + b.t * piece.share;
      if (u >= phi.map().min_value() && u <= phi.map().max_value()) {
        probes.insert(phi.map().first_reaching(u));
        probes.insert(phi.map().last_below(u));
      }
    }
    cut += piece.share;
  }
  for (const auto& t : probes) {
    const auto expect = eval_word(word, phi.map()(t));
    if (via_word(t) != expect) return "word form at t = " + to_string(t) + ": " + points_text(via_word(t)) + " vs " + points_text(expect);
    if (via_pieces(t) != expect)
      return "piece form at t = " + to_string(t) + ": " + points_text(via_pieces(t)) + " vs " + points_text(expect);
  }
  return "";
}

CheckSummary check_renormalize(std::uint64_t seed, std::size_t count) {
  Sampler rng(seed);
  return run("renormalize", count, [&](std::size_t) -> std::string {
    auto word = rng.word(static_cast<std::size_t>(rng.uniform(1, 4)));
    Clock phi(rng.clock(1), 1);
    return renormalize_mismatch(word, phi, renormalize(word, phi));
  });
}

std::string smith_mismatch(const IntMatrix& m, const SmithForm& s) {
  if (s.u * m * s.v != s.d) return "U M V != D";
  if (s.u * s.u_inv != IntMatrix::identity(m.rows()) || s.v * s.v_inv != IntMatrix::identity(m.cols()))
    return "transform not invertible";
  for (std::size_t i = 0; i < s.d.rows(); ++i)
    for (std::size_t j = 0; j < s.d.cols(); ++j)
      if (i != j && s.d(i, j) != 0) return "D not diagonal";
  auto diag = s.diagonal();
  if (diag.size() != s.rank) return "rank mismatch";
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] <= 0) return "nonpositive invariant factor";
    if (i + 1 < diag.size() && diag[i + 1] % diag[i] != 0) return "invariant factors do not divide";
  }
  return "";
}

CheckSummary check_smith(std::uint64_t seed, std::size_t count, std::size_t size) {
  Sampler rng(seed);
  return run("smith", count, [&](std::size_t) -> std::string {
    IntMatrix m(size, size);
    const int zeros = rng.uniform(0, 3);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) m(i, j) = rng.uniform(0, 3) < zeros ? 0 : rng.uniform(-9, 9);
    return smith_mismatch(m, smith_normal_form(m));
  });
}

}  // namespace mds::cli
