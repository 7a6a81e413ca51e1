#include "cscim/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "cscim/radar.hpp"

namespace cscim::harness {
namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(","));
  std::vector<std::string> out;
  for (auto& p : parts) {
    boost::trim(p);
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

bool parse_bool(const std::string& s) {
  const std::string v = boost::to_lower_copy(boost::trim_copy(s));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("not a boolean: " + s);
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string variant_name(const Variant& v) {
  if (v.scheme == modem::Scheme::CscIm)
    return std::string("csc-im-") + std::string(chirp::to_string(v.family));
  return std::string(modem::to_string(v.scheme));
}

std::string Variant::label() const {
  return variant_name(*this) + "/L" + std::to_string(L) + (use_is ? "/is" : "");
}

Variant variant_from_name(const std::string& name) {
  Variant v;
  if (name == "csc-im-linear") {
    v.scheme = modem::Scheme::CscIm;
    v.family = chirp::Family::Linear;
  } else if (name == "csc-im-sinusoidal") {
    v.scheme = modem::Scheme::CscIm;
    v.family = chirp::Family::Sinusoidal;
  } else {
    v.scheme = modem::scheme_from_string(name);
  }
  return v;
}

double ExperimentConfig::max_range() const { return channel::RadarScene::range_of(cp_time()); }

double ExperimentConfig::r_min() const {
  return radar::min_resolution(deviation_linear / symbol_time);
}

std::vector<Variant> ExperimentConfig::variants() const {
  std::vector<Variant> out;
  for (const auto& name : schemes) {
    for (int L : L_values) {
      for (bool is : is_options) {
        if (is && (L < 2 || !is_delta.contains(L))) continue;
        Variant v = variant_from_name(name);
        v.L = L;
        v.use_is = is;
        out.push_back(v);
      }
    }
  }
  return out;
}

int ExperimentConfig::delta_for(const Variant& v) const {
  if (!v.use_is) return 0;
  const auto it = is_delta.find(v.L);
  return it == is_delta.end() ? 0 : it->second;
}

modem::ModemConfig ExperimentConfig::modem_config(const Variant& v) const {
  modem::ModemConfig m;
  m.scheme = v.scheme;
  m.chirp.family = v.family;
  m.chirp.deviation = v.family == chirp::Family::Linear ? deviation_linear : deviation_sinusoidal;
  m.chirp.lowest_bin = lowest_bin;
  m.chirp.highest_bin = highest_bin;
  m.chirp.symbol_time = symbol_time;
  m.n = n;
  m.n_cp = n_cp;
  m.L = v.L;
  m.H = H;
  m.delta = delta_for(v);
  m.mapping = mapping;
  return m;
}

double ExperimentConfig::radar_bandwidth(const Variant& v) const {
  if (v.scheme != modem::Scheme::CscIm) return bins() / symbol_time;
  const double d = v.family == chirp::Family::Linear ? deviation_linear : deviation_sinusoidal;
  return d / symbol_time;
}

void ExperimentConfig::validate() const {
  auto need = [](bool ok, const char* key) {
    if (!ok) throw std::invalid_argument(std::string("invalid config value: ") + key);
  };
  need(lowest_bin < 0 && highest_bin > 0, "waveform.lowest_bin/highest_bin");
  need(n > bins(), "waveform.n");
  need(n_cp > 0 && n_cp <= n, "waveform.n_cp");
  need(symbol_time > 0.0, "waveform.symbol_time");
  need(carrier >= 0.0, "waveform.carrier");
  need(deviation_linear >= 0.0 && deviation_linear < bins(), "waveform.deviation_linear");
  need(deviation_sinusoidal >= 0.0 && deviation_sinusoidal < bins(),
       "waveform.deviation_sinusoidal");
  need(!schemes.empty(), "modem.schemes");
  for (const auto& s : schemes) variant_from_name(s);
  need(!L_values.empty(), "modem.L");
  need(H >= 1 && (H & (H - 1)) == 0, "modem.H");
  need(!is_options.empty(), "modem.is");
  need(axis == "snr" || axis == "ebn0", "sweep.axis");
  need(!sweep_db.empty(), "sweep.values");
  need(!spacing_rmin.empty(), "sweep.spacing_rmin");
  need(!radar_snr_db.empty(), "sweep.radar_snr_db");
  need(trials >= 1, "run.trials");
  need(max_trials >= 1, "run.max_trials");
  need(min_errors >= 1, "run.min_errors");
  need(batch >= 1, "run.batch");
  need(oversample >= 4, "run.oversample");
  need(scenario == "single" || scenario == "two", "radar.scenario");
  need(!estimators.empty(), "radar.estimators");
  for (const auto& e : estimators) need(e == "mf" || e == "lmmse", "radar.estimators");
  need(refine_stages >= 0 && zoom >= 2 && update_passes >= 0, "radar search settings");
  need(0.0 < single_min && single_min <= single_max && single_max < 1.0, "radar.single_range");
  need(spacing_min > 0.0 && spacing_min <= spacing_max, "radar.spacing");
  need(alpha_single != 0.0 && alpha_two != 0.0, "radar.alpha");
  for (const auto& v : variants()) modem_config(v).validate();
}

std::string ExperimentConfig::canonical() const {
  std::map<std::string, std::string> kv;
  kv["waveform.lowest_bin"] = std::to_string(lowest_bin);
  kv["waveform.highest_bin"] = std::to_string(highest_bin);
  kv["waveform.n"] = std::to_string(n);
  kv["waveform.n_cp"] = std::to_string(n_cp);
  kv["waveform.symbol_time"] = num(symbol_time);
  kv["waveform.carrier"] = num(carrier);
  kv["waveform.deviation_linear"] = num(deviation_linear);
  kv["waveform.deviation_sinusoidal"] = num(deviation_sinusoidal);
  kv["modem.schemes"] = join(schemes);
  kv["modem.L"] = join(L_values);
  kv["modem.H"] = std::to_string(H);
  std::string deltas;
  for (const auto& [l, d] : is_delta)
    deltas += (deltas.empty() ? "" : ",") + std::to_string(l) + ":" + std::to_string(d);
  kv["modem.is_delta"] = deltas;
  std::vector<int> is_ints(is_options.begin(), is_options.end());
  kv["modem.is"] = join(is_ints);
  kv["modem.mapping"] = mapping == index_codec::PskMapping::Gray ? "gray" : "natural";
  kv["sweep.axis"] = axis;
  kv["sweep.values"] = join(sweep_db);
  kv["sweep.spacing_rmin"] = join(spacing_rmin);
  kv["sweep.radar_snr_db"] = join(radar_snr_db);
  kv["sweep.resolution_snr_db"] = num(resolution_snr_db);
  kv["run.trials"] = std::to_string(trials);
  kv["run.max_trials"] = std::to_string(max_trials);
  kv["run.min_errors"] = std::to_string(min_errors);
  kv["run.batch"] = std::to_string(batch);
  kv["run.oversample"] = std::to_string(oversample);
  kv["channel.fading"] = fading ? "true" : "false";
  kv["channel.pdp_delay_scale"] = num(pdp_delay_scale);
  kv["radar.scenario"] = scenario;
  kv["radar.estimators"] = join(estimators);
  kv["radar.refine_stages"] = std::to_string(refine_stages);
  kv["radar.zoom"] = std::to_string(zoom);
  kv["radar.update_passes"] = std::to_string(update_passes);
  kv["radar.single_min"] = num(single_min);
  kv["radar.single_max"] = num(single_max);
  kv["radar.spacing_min"] = num(spacing_min);
  kv["radar.spacing_max"] = num(spacing_max);
  kv["radar.alpha_single"] = num(alpha_single);
  kv["radar.alpha_two"] = num(alpha_two);
  std::string out_text;
  for (const auto& [k, v] : kv) out_text += k + " = " + v + "\n";
  return out_text;
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig desk_preset() { return ExperimentConfig{}; }

ExperimentConfig mmwave_preset(bool m1536) {
  ExperimentConfig c;
  c.preset = m1536 ? "mmwave-m1536" : "mmwave";
  c.lowest_bin = m1536 ? -767 : -723;
  c.highest_bin = m1536 ? 768 : 724;
  c.n = 2048;
  c.n_cp = 512;
  c.symbol_time = 2048.0 / 10.56e9;
  c.carrier = 64.8e9;
  c.deviation_linear = 1382.0;
  c.deviation_sinusoidal = 691.0;
  c.is_delta = {{2, 84}, {5, 252}};
  c.pdp_delay_scale = 1.0;
  c.sweep_db = {-2, 0, 2, 4, 6};
  c.max_trials = 100000;
  c.batch = 500;
  return c;
}

ExperimentConfig preset_by_name(const std::string& name) {
  if (name == "desk") return desk_preset();
  if (name == "mmwave") return mmwave_preset(false);
  if (name == "mmwave-m1536") return mmwave_preset(true);
  throw std::invalid_argument("unknown preset: " + name + " (desk, mmwave, mmwave-m1536)");
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig c) {
  boost::property_tree::ptree tree;
  boost::property_tree::ini_parser::read_ini(path, tree);

  using Setter = std::function<void(const std::string&)>;
  auto to_i = [](const std::string& s) { return std::stoi(s); };
  auto to_i64 = [](const std::string& s) { return static_cast<std::int64_t>(std::stoll(s)); };
  auto to_d = [](const std::string& s) { return std::stod(s); };
  auto doubles = [&](const std::string& s) {
    std::vector<double> v;
    for (const auto& p : split_list(s)) v.push_back(to_d(p));
    return v;
  };
  const std::map<std::string, Setter> setters{
      {"waveform.lowest_bin", [&](auto& s) { c.lowest_bin = to_i(s); }},
      {"waveform.highest_bin", [&](auto& s) { c.highest_bin = to_i(s); }},
      {"waveform.n", [&](auto& s) { c.n = to_i(s); }},
      {"waveform.n_cp", [&](auto& s) { c.n_cp = to_i(s); }},
      {"waveform.symbol_time", [&](auto& s) { c.symbol_time = to_d(s); }},
      {"waveform.carrier", [&](auto& s) { c.carrier = to_d(s); }},
      {"waveform.deviation_linear", [&](auto& s) { c.deviation_linear = to_d(s); }},
      {"waveform.deviation_sinusoidal", [&](auto& s) { c.deviation_sinusoidal = to_d(s); }},
      {"modem.schemes", [&](auto& s) { c.schemes = split_list(s); }},
      {"modem.L",
       [&](auto& s) {
         c.L_values.clear();
         for (const auto& p : split_list(s)) c.L_values.push_back(to_i(p));
       }},
      {"modem.H", [&](auto& s) { c.H = to_i(s); }},
      {"modem.is_delta",
       [&](auto& s) {
         c.is_delta.clear();
         for (const auto& p : split_list(s)) {
           const auto colon = p.find(':');
           if (colon == std::string::npos) throw std::invalid_argument("is_delta wants L:delta");
           c.is_delta[to_i(p.substr(0, colon))] = to_i(p.substr(colon + 1));
         }
       }},
      {"modem.is",
       [&](auto& s) {
         c.is_options.clear();
         for (const auto& p : split_list(s)) c.is_options.push_back(parse_bool(p));
       }},
      {"modem.mapping",
       [&](auto& s) {
         if (s == "natural") c.mapping = index_codec::PskMapping::Natural;
         else if (s == "gray") c.mapping = index_codec::PskMapping::Gray;
         else throw std::invalid_argument("mapping must be natural or gray");
       }},
      {"sweep.axis", [&](auto& s) { c.axis = s; }},
      {"sweep.values", [&](auto& s) { c.sweep_db = doubles(s); }},
      {"sweep.spacing_rmin", [&](auto& s) { c.spacing_rmin = doubles(s); }},
      {"sweep.radar_snr_db", [&](auto& s) { c.radar_snr_db = doubles(s); }},
      {"sweep.resolution_snr_db", [&](auto& s) { c.resolution_snr_db = to_d(s); }},
      {"run.trials", [&](auto& s) { c.trials = to_i64(s); }},
      {"run.max_trials", [&](auto& s) { c.max_trials = to_i64(s); }},
      {"run.min_errors", [&](auto& s) { c.min_errors = to_i64(s); }},
      {"run.batch", [&](auto& s) { c.batch = to_i64(s); }},
      {"run.seed", [&](auto& s) { c.seed = std::stoull(s); }},
      {"run.oversample", [&](auto& s) { c.oversample = to_i(s); }},
      {"channel.fading", [&](auto& s) { c.fading = parse_bool(s); }},
      {"channel.pdp_delay_scale", [&](auto& s) { c.pdp_delay_scale = to_d(s); }},
      {"radar.scenario", [&](auto& s) { c.scenario = s; }},
      {"radar.estimators", [&](auto& s) { c.estimators = split_list(s); }},
      {"radar.refine_stages", [&](auto& s) { c.refine_stages = to_i(s); }},
      {"radar.zoom", [&](auto& s) { c.zoom = to_i(s); }},
      {"radar.update_passes", [&](auto& s) { c.update_passes = to_i(s); }},
      {"radar.single_min", [&](auto& s) { c.single_min = to_d(s); }},
      {"radar.single_max", [&](auto& s) { c.single_max = to_d(s); }},
      {"radar.spacing_min", [&](auto& s) { c.spacing_min = to_d(s); }},
      {"radar.spacing_max", [&](auto& s) { c.spacing_max = to_d(s); }},
      {"radar.alpha_single", [&](auto& s) { c.alpha_single = to_d(s); }},
      {"radar.alpha_two", [&](auto& s) { c.alpha_two = to_d(s); }},
  };

  for (const auto& [section, body] : tree) {
    for (const auto& [key, node] : body) {
      const std::string full = section + "." + key;
      const auto it = setters.find(full);
      if (it == setters.end()) throw std::invalid_argument("unknown config key: " + full);
      try {
        // Trailing "; ..." or "# ..." is a comment.
        std::string value = node.get_value<std::string>();
        value = value.substr(0, value.find_first_of(";#"));
        it->second(boost::trim_copy(value));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("bad value for " + full + ": " + e.what());
      } catch (const std::out_of_range&) {
        throw std::invalid_argument("value out of range for " + full);
      }
    }
  }
  if (c.preset.find("custom") == std::string::npos) c.preset += "+file";
  return c;
}

}  // namespace cscim::harness
