#include "qwalk/qwalk.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>

#include "qwalk/channel_spec.hpp"
#include "qwalk/error.hpp"
#include "qwalk/large_deviations.hpp"
#include "qwalk/walk.hpp"
#include "qwalk/zoo.hpp"

struct qw_channel {
  qwalk::Channel channel;
};

struct qw_walk {
  qwalk::WalkSpec spec;
};

struct qw_lattice {
  qwalk::LatticeDistribution dist;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
qw_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return QW_OK;
  } catch (const qwalk::Error& e) {
    g_last_error = e.what();
    return static_cast<qw_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QW_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QW_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return QW_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) qwalk::fail(qwalk::ErrorCode::kInvalidArgument, what);
}

qwalk::Vec3 vec3(const double* p) { return {p[0], p[1], p[2]}; }

void put3(const qwalk::Vec3& v, double* out) {
  for (int i = 0; i < 3; ++i) out[i] = v[static_cast<std::size_t>(i)];
}

qwalk::Mat3 mat3(const double* p) {
  qwalk::Mat3 m{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = p[3 * i + j];
  return m;
}

void put9(const qwalk::Mat3& m, double* out) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[3 * i + j] = m[i][j];
}

qwalk::DensityMatrix to_density(const qw_state& s) {
  return qwalk::DensityMatrix::make(s.alpha, {s.beta_re, s.beta_im});
}

qw_state to_state(const qwalk::DensityMatrix& rho) {
  return {rho.alpha(), rho.beta().real(), rho.beta().imag()};
}

void fill_analysis(const qwalk::ChannelAnalysis& an, qw_analysis* out) {
  put3(an.v.vec(), out->v);
  out->rho_inf = to_state(an.rho_inf);
  put9(an.covariance, out->covariance);
  out->spectral_radius = an.spectral_radius;
  switch (an.assumption_a) {
    case qwalk::AssumptionA::kHoldsGeometric:
      out->assumption = QW_ASSUMPTION_HOLDS;
      break;
    case qwalk::AssumptionA::kFailsSpectralRadiusOne:
      out->assumption = QW_ASSUMPTION_FAILS_SPECTRAL_RADIUS_ONE;
      break;
    case qwalk::AssumptionA::kNonUniqueFixedPoint:
      out->assumption = QW_ASSUMPTION_NON_UNIQUE;
      break;
  }
  out->fixed_point_unique = an.fixed_point_unique ? 1 : 0;
}

qwalk::WordSpec to_word(const qw_letter* letters, std::size_t count) {
  require(letters != nullptr || count == 0, "letters must not be NULL");
  qwalk::WordSpec word;
  for (std::size_t i = 0; i < count; ++i) {
    const qw_letter& l = letters[i];
    word.letters.push_back({qwalk::Direction{vec3(l.nu), l.center},
                            qwalk::Window{l.t0, l.t1}});
  }
  return word;
}

qwalk::KrausConvention to_convention(qw_convention c) {
  if (c == QW_LEFT_ADJOINT) return qwalk::KrausConvention::kLeftAdjoint;
  if (c == QW_RIGHT_ADJOINT) return qwalk::KrausConvention::kRightAdjoint;
  qwalk::fail(qwalk::ErrorCode::kInvalidArgument, "unknown Kraus convention");
}

}  // namespace

extern "C" {

const char* qw_last_error(void) { return g_last_error.c_str(); }

const char* qw_status_string(qw_status status) {
  switch (status) {
    case QW_OK: return "ok";
    case QW_INVALID_ARGUMENT: return "invalid argument";
    case QW_PARSE_ERROR: return "parse error";
    case QW_NON_UNIQUE_FIXED_POINT: return "non-unique fixed point";
    case QW_DEGENERATE: return "degenerate direction";
    case QW_DEGREE_OVERFLOW: return "degree overflow";
    case QW_NOT_CONVERGED: return "not converged";
    case QW_INVALID_CHANNEL: return "invalid channel";
    case QW_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void qw_string_free(char* s) { delete[] s; }

qw_status qw_channel_parse(const char* json, qw_channel** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "NULL argument");
    *out = new qw_channel{qwalk::parse_channel_spec(json)};
  });
}

qw_status qw_channel_named(const char* name, const double* params, size_t count,
                           qw_channel** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "NULL argument");
    require(params != nullptr || count == 0, "params must not be NULL");
    const std::string n = name;
    auto need = [&](std::size_t k) {
      if (count != k) qwalk::fail(qwalk::ErrorCode::kInvalidArgument,
                                  n + " takes " + std::to_string(k) + " parameter(s)");
    };
    qwalk::Channel ch = [&]() -> qwalk::Channel {
      if (n == "depolarizing") return need(1), qwalk::zoo::depolarizing(params[0]).channel;
      if (n == "phase_damping") return need(1), qwalk::zoo::phase_damping(params[0]).channel;
      if (n == "amplitude_damping")
        return need(1), qwalk::zoo::amplitude_damping(params[0]).channel;
      if (n == "trigonometric")
        return need(2), qwalk::zoo::trigonometric(params[0], params[1]).channel;
      if (n == "markov") return need(2), qwalk::zoo::markov_chain(params[0], params[1]).channel;
      qwalk::fail(qwalk::ErrorCode::kInvalidArgument, "unknown channel name " + n);
    }();
    *out = new qw_channel{std::move(ch)};
  });
}

qw_status qw_channel_random_kraus(uint64_t seed, int count, qw_convention convention,
                                  qw_channel** out) {
  return guarded([&] {
    require(out != nullptr, "NULL argument");
    *out = new qw_channel{qwalk::random_kraus_channel(seed, count, to_convention(convention))};
  });
}

void qw_channel_free(qw_channel* ch) { delete ch; }

qw_status qw_channel_form(const qw_channel* ch, int* out) {
  return guarded([&] {
    require(ch != nullptr && out != nullptr, "NULL argument");
    *out = static_cast<int>(ch->channel.index());
  });
}

qw_status qw_channel_to_json(const qw_channel* ch, char** out) {
  return guarded([&] {
    require(ch != nullptr && out != nullptr, "NULL argument");
    const std::string text = qwalk::channel_spec_json(ch->channel);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

qw_status qw_channel_affine(const qw_channel* ch, double linear[9], double translation[3]) {
  return guarded([&] {
    require(ch != nullptr && linear != nullptr && translation != nullptr, "NULL argument");
    put9(qwalk::linear_part(ch->channel), linear);
    put3(qwalk::translation_part(ch->channel), translation);
  });
}

qw_status qw_channel_apply(const qw_channel* ch, qw_state in, qw_state* out) {
  return guarded([&] {
    require(ch != nullptr && out != nullptr, "NULL argument");
    *out = to_state(qwalk::apply(ch->channel, to_density(in)));
  });
}

qw_status qw_channel_iterate(const qw_channel* ch, qw_state rho0, size_t k, qw_state* out) {
  return guarded([&] {
    require(ch != nullptr && out != nullptr, "NULL argument");
    *out = to_state(qwalk::iterate(ch->channel, to_density(rho0), k).back());
  });
}

qw_status qw_channel_choi(const qw_channel* ch, double out[32]) {
  return guarded([&] {
    require(ch != nullptr && out != nullptr, "NULL argument");
    const auto m = qwalk::choi(ch->channel).entries();
    for (std::size_t i = 0; i < 16; ++i) {
      out[2 * i] = m[i].real();
      out[2 * i + 1] = m[i].imag();
    }
  });
}

qw_status qw_channel_choi_eigenvalues(const qw_channel* ch, double out[4]) {
  return guarded([&] {
    require(ch != nullptr && out != nullptr, "NULL argument");
    const auto e = qwalk::herm_eigen4(qwalk::choi(ch->channel));
    for (std::size_t i = 0; i < 4; ++i) out[i] = e[i];
  });
}

qw_status qw_channel_is_cp(const qw_channel* ch, double tolerance, int* out) {
  return guarded([&] {
    require(ch != nullptr && out != nullptr, "NULL argument");
    *out = qwalk::is_cp_choi(ch->channel, tolerance) ? 1 : 0;
  });
}

qw_status qw_channel_krsw_conditions(const qw_channel* ch, qw_krsw_conditions* out) {
  return guarded([&] {
    require(ch != nullptr && out != nullptr, "NULL argument");
    const auto* krsw = std::get_if<qwalk::KRSWChannel>(&ch->channel);
    require(krsw != nullptr, "channel is not in KRSW form");
    const auto c = qwalk::krsw_cp_conditions(*krsw);
    *out = {c.applicable, c.cond1, c.cond2, c.cond3, c.completely_positive};
  });
}

qw_status qw_channel_fixed_point(const qw_channel* ch, double v[3]) {
  return guarded([&] {
    require(ch != nullptr && v != nullptr, "NULL argument");
    const auto affine = qwalk::AffineChannel::make(qwalk::linear_part(ch->channel),
                                                   qwalk::translation_part(ch->channel));
    put3(qwalk::fixed_point(affine).vec(), v);
  });
}

qw_status qw_channel_spectral_radius(const qw_channel* ch, double* out) {
  return guarded([&] {
    require(ch != nullptr && out != nullptr, "NULL argument");
    *out = qwalk::spectral_radius(qwalk::linear_part(ch->channel));
  });
}

qw_status qw_channel_analyze(const qw_channel* ch, const qw_state* initial, qw_analysis* out) {
  return guarded([&] {
    require(ch != nullptr && out != nullptr, "NULL argument");
    std::optional<qwalk::DensityMatrix> rho0;
    if (initial != nullptr) rho0 = to_density(*initial);
    fill_analysis(qwalk::analyze(ch->channel, rho0), out);
  });
}

qw_status qw_walk_new(const qw_channel* ch, const qw_state* initial, size_t n, qw_walk** out) {
  return guarded([&] {
    require(ch != nullptr && out != nullptr, "NULL argument");
    if (initial == nullptr) {
      *out = new qw_walk{qwalk::WalkSpec::stationary(ch->channel, n)};
    } else {
      *out = new qw_walk{qwalk::WalkSpec::make(ch->channel, to_density(*initial), n)};
    }
  });
}

void qw_walk_free(qw_walk* w) { delete w; }

qw_status qw_walk_analysis(const qw_walk* w, qw_analysis* out) {
  return guarded([&] {
    require(w != nullptr && out != nullptr, "NULL argument");
    fill_analysis(w->spec.analysis(), out);
  });
}

qw_status qw_walk_distribution(const qw_walk* w, const double nu[3], double center, double t0,
                               double t1, qw_lattice** out) {
  return guarded([&] {
    require(w != nullptr && nu != nullptr && out != nullptr, "NULL argument");
    const auto law =
        qwalk::site_laws(w->spec, qwalk::Direction{vec3(nu), center}, qwalk::Window{t0, t1});
    *out = new qw_lattice{qwalk::exact_distribution(law)};
  });
}

void qw_lattice_free(qw_lattice* l) { delete l; }

size_t qw_lattice_size(const qw_lattice* l) { return l ? l->dist.weights.size() : 0; }

double qw_lattice_value(const qw_lattice* l, size_t i) { return l ? l->dist.value(i) : 0.0; }

double qw_lattice_weight(const qw_lattice* l, size_t i) {
  return l && i < l->dist.weights.size() ? l->dist.weights[i] : 0.0;
}

qw_status qw_walk_moments(const qw_walk* w, const double nu[3], double center, double t0,
                          double t1, int max_order, double* out) {
  return guarded([&] {
    require(w != nullptr && nu != nullptr && out != nullptr, "NULL argument");
    const auto law =
        qwalk::site_laws(w->spec, qwalk::Direction{vec3(nu), center}, qwalk::Window{t0, t1});
    const auto m = qwalk::exact_moments(law, max_order);
    for (std::size_t i = 0; i < m.size(); ++i) out[i] = m[i];
  });
}

qw_status qw_walk_clt(const qw_walk* w, const double nu[3], double t, double* ks_distance,
                      double* target_variance) {
  return guarded([&] {
    require(w != nullptr && nu != nullptr && ks_distance != nullptr &&
                target_variance != nullptr,
            "NULL argument");
    const auto r = qwalk::clt_diagnostic(w->spec, vec3(nu), t);
    *ks_distance = r.ks_distance;
    *target_variance = r.target_variance;
  });
}

qw_status qw_walk_lambda_n(const qw_walk* w, const double nu[3], double t, double* out) {
  return guarded([&] {
    require(w != nullptr && nu != nullptr && out != nullptr, "NULL argument");
    *out = qwalk::lambda_n(w->spec, vec3(nu), t);
  });
}

qw_status qw_walk_ldp(const qw_walk* w, const double nu[3], double x, double* empirical_rate,
                      double* limit_rate) {
  return guarded([&] {
    require(w != nullptr && nu != nullptr && empirical_rate != nullptr &&
                limit_rate != nullptr,
            "NULL argument");
    const auto r = qwalk::ldp_diagnostic(w->spec, vec3(nu), x);
    *empirical_rate = r.empirical_rate;
    *limit_rate = r.limit_rate;
  });
}

qw_status qw_walk_word_expectation(const qw_walk* w, const qw_letter* letters, size_t count,
                                   double* re, double* im) {
  return guarded([&] {
    require(w != nullptr && re != nullptr && im != nullptr, "NULL argument");
    const auto z = qwalk::word_expectation(w->spec, to_word(letters, count));
    *re = z.real();
    *im = z.imag();
  });
}

qw_status qw_walk_symmetrized(const qw_walk* w, const qw_letter* letters, size_t count,
                              double* out) {
  return guarded([&] {
    require(w != nullptr && out != nullptr, "NULL argument");
    *out = qwalk::symmetrized_expectation(w->spec, to_word(letters, count));
  });
}

qw_status qw_lambda_limit(const double nu[3], const double v[3], double t, double* out) {
  return guarded([&] {
    require(nu != nullptr && v != nullptr && out != nullptr, "NULL argument");
    *out = qwalk::lambda_limit({vec3(nu), qwalk::BlochVector::from(vec3(v))}, t);
  });
}

qw_status qw_rate_function(const double nu[3], const double v[3], double x, double* out) {
  return guarded([&] {
    require(nu != nullptr && v != nullptr && out != nullptr, "NULL argument");
    *out = qwalk::rate_function({vec3(nu), qwalk::BlochVector::from(vec3(v))}, x);
  });
}

qw_status qw_legendre_numeric(const double nu[3], const double v[3], double x, double* out) {
  return guarded([&] {
    require(nu != nullptr && v != nullptr && out != nullptr, "NULL argument");
    *out = qwalk::legendre_numeric({vec3(nu), qwalk::BlochVector::from(vec3(v))}, x);
  });
}

qw_status qw_gaussian_word_moment(const double covariance[9], const qw_letter* letters,
                                  size_t count, double* out) {
  return guarded([&] {
    require(covariance != nullptr && out != nullptr, "NULL argument");
    *out = qwalk::gaussian_word_moment(mat3(covariance), to_word(letters, count));
  });
}

qw_status qw_quasi_free_word_moment(const double v[3], const qw_letter* letters,
                                    size_t count, double* re, double* im) {
  return guarded([&] {
    require(v != nullptr && re != nullptr && im != nullptr, "NULL argument");
    const auto z = qwalk::quasi_free_word_moment(qwalk::BlochVector::from(vec3(v)),
                                                 to_word(letters, count));
    *re = z.real();
    *im = z.imag();
  });
}

qw_status qw_wick_moment(const double covariance[9], const int* components,
                         const double* times, size_t count, double* out) {
  return guarded([&] {
    require(covariance != nullptr && out != nullptr, "NULL argument");
    require((components != nullptr && times != nullptr) || count == 0, "NULL letters");
    std::vector<std::pair<int, double>> letters;
    for (std::size_t i = 0; i < count; ++i) letters.emplace_back(components[i], times[i]);
    *out = qwalk::wick_moment(mat3(covariance), letters);
  });
}

qw_status qw_commutator_check(const double v[3], size_t n, double t,
                              qw_commutator_report* out) {
  return guarded([&] {
    require(v != nullptr && out != nullptr, "NULL argument");
    const auto r = qwalk::commutator_identity_check(qwalk::BlochVector::from(vec3(v)), n, t);
    *out = {r.holds ? 1 : 0, r.per_site_error, r.exact_scale, r.approximate_scale,
            r.discrepancy};
  });
}

}  // extern "C"
