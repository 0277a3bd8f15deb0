// vlcp: encode/decode the compact CPM, run channel simulations, and drive
// the latency/BER experiment sweeps.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vlcp/cpm.hpp"
#include "vlcp/experiment.hpp"
#include "vlcp/mac.hpp"
#include "vlcp/stats.hpp"

using namespace vlcp;
using nlohmann::json;

namespace {

json cpm_to_json(const CollectivePerceptionMessage& msg) {
  json objs = json::array();
  for (const auto& o : msg.objects) {
    objs.push_back({{"x_dm", o.x_dm},
                    {"y_dm", o.y_dm},
                    {"vx_cmps", o.vx_cmps},
                    {"vy_cmps", o.vy_cmps},
                    {"delta_t_ms", o.delta_t_ms}});
  }
  char mac_hex[32];
  std::snprintf(mac_hex, sizeof(mac_hex), "%016llx",
                static_cast<unsigned long long>(msg.mac));
  return json{{"psid", msg.header.psid},
              {"generation_time_us", msg.header.generation_time_us},
              {"protocol_version", msg.pdu.protocol_version},
              {"message_id", msg.pdu.message_id},
              {"station_id", msg.pdu.station_id},
              {"latitude", msg.management.latitude},
              {"longitude", msg.management.longitude},
              {"reference_time_ms", msg.management.reference_time_ms},
              {"objects", objs},
              {"mac", mac_hex}};
}

CollectivePerceptionMessage cpm_from_json(const json& j) {
  CollectivePerceptionMessage msg;
  msg.header.psid = j.value("psid", 0);
  msg.header.generation_time_us = j.value("generation_time_us", 0ULL);
  msg.pdu.protocol_version = j.value("protocol_version", 0);
  msg.pdu.message_id = j.value("message_id", 0);
  msg.pdu.station_id = j.value("station_id", 0U);
  msg.management.latitude = j.value("latitude", 0);
  msg.management.longitude = j.value("longitude", 0);
  if (j.contains("reference_time_ms")) {
    msg.management.reference_time_ms = j["reference_time_ms"].get<std::uint16_t>();
  } else {
    msg.management.reference_time_ms =
        reference_time_from_generation(msg.header.generation_time_us);
  }
  for (const auto& o : j.value("objects", json::array())) {
    PerceivedObject obj;
    obj.x_dm = o.value("x_dm", 0);
    obj.y_dm = o.value("y_dm", 0);
    obj.vx_cmps = o.value("vx_cmps", 0);
    obj.vy_cmps = o.value("vy_cmps", 0);
    obj.delta_t_ms = o.value("delta_t_ms", 0);
    msg.objects.push_back(obj);
  }
  return msg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string size_report(std::size_t n_objects) {
  const std::size_t bits = cpm_size_bits(n_objects);
  const std::size_t padded = (bits + 7) / 8 * 8;
  std::ostringstream ss;
  ss << "272 + 74*" << n_objects << " = " << bits << " bits (padded " << padded
     << " = " << padded / 8 << " bytes)";
  return ss.str();
}

RunConfig load_run_config(const std::string& preset, const std::string& config_path) {
  if (!config_path.empty()) return config_from_json(read_file(config_path));
  return preset_config(preset);
}

int report_and_write(const ExperimentResult& result, const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  const std::string path = cfg.out_dir + "/" + cfg.preset + ".csv";
  std::ofstream out(path, std::ios::binary);
  write_csv(out, result);
  std::cout << "wrote " << path << " (" << result.points.size() << " points)\n";
  for (const auto& pt : result.points) {
    std::cout << "  " << pt.preset << " fps=" << pt.fps << " d=" << pt.distance_m
              << "m v=" << pt.speed_kmh << "km/h packets=" << pt.packets_tx
              << " ber=" << pt.ber << " erasures=" << pt.erasures
              << " latency=" << pt.latency_mean_s << "s\n";
  }
  if (!result.invariants_ok) {
    std::cerr << "invariant check failed in at least one point\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VLC collective-perception toolkit"};
  app.require_subcommand(1);

  std::string msg_path, key_hex(32, '0'), hex_input, in_path;
  std::string preset = "outdoor-range", config_path, out_dir = ".";
  std::uint64_t seed = 1;
  double noise = -1.0;
  int dump_frames = 0;
  std::vector<double> fps_list, distance_list, speed_list;

  auto* enc = app.add_subcommand("encode", "encode a message description file");
  enc->add_option("--msg", msg_path, "message JSON file")->required();
  enc->add_option("--key", key_hex, "128-bit key, 32 hex digits");

  auto* dec = app.add_subcommand("decode", "decode a hex-encoded message");
  dec->add_option("--hex", hex_input, "hex bitstring");
  dec->add_option("--in", in_path, "file containing hex");
  dec->add_option("--key", key_hex, "128-bit key, 32 hex digits");

  auto* ins = app.add_subcommand("inspect", "decode without failing on a bad MAC");
  ins->add_option("--hex", hex_input, "hex bitstring");
  ins->add_option("--in", in_path, "file containing hex");
  ins->add_option("--key", key_hex, "128-bit key, 32 hex digits");

  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--preset", preset, "indoor-stationary | outdoor-range | outdoor-driving");
    cmd->add_option("--config", config_path, "config JSON file (overrides --preset)");
    cmd->add_option("--seed", seed, "master seed");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--noise", noise, "override noise sigma (gray levels)");
    cmd->add_option("--dump-frames", dump_frames, "export first N captures as PGM");
  };

  auto* run = app.add_subcommand("run", "run an experiment preset");
  add_run_flags(run);

  auto* cal = app.add_subcommand("calibrate", "calibrate noise sigma at 100 m");
  add_run_flags(cal);

  auto* swp = app.add_subcommand("sweep", "run with explicit sweep axes");
  add_run_flags(swp);
  swp->add_option("--fps", fps_list, "camera fps list")->delimiter(',');
  swp->add_option("--distances", distance_list, "distance list, m")->delimiter(',');
  swp->add_option("--speeds", speed_list, "speed list, km/h")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (enc->parsed()) {
      const auto msg = cpm_from_json(json::parse(read_file(msg_path)));
      const BitVec bits = encode_cpm(msg, parse_key_hex(key_hex));
      std::cout << bits.to_hex() << '\n' << size_report(msg.objects.size()) << '\n';
      return 0;
    }

    if (dec->parsed() || ins->parsed()) {
      std::string hex = hex_input;
      if (hex.empty() && !in_path.empty()) {
        hex = read_file(in_path);
        while (!hex.empty() && (hex.back() == '\n' || hex.back() == ' ')) hex.pop_back();
      }
      if (hex.empty()) throw std::runtime_error("provide --hex or --in");
      const MacKey key = parse_key_hex(key_hex);

      // Padded canonical bytes: recover the 272+74n bit length.
      const std::size_t total_bits = hex.size() * 4;
      std::size_t bits_len = total_bits;
      while (bits_len >= 272 && (bits_len - 272) % 74 != 0) --bits_len;
      const BitVec bits = BitVec::from_hex(hex, static_cast<std::ptrdiff_t>(bits_len));

      if (dec->parsed()) {
        const auto msg = decode_cpm(bits, key);
        std::cout << cpm_to_json(msg).dump(2) << '\n';
      } else {
        bool mac_ok = true;
        CollectivePerceptionMessage msg;
        try {
          msg = decode_cpm(bits, key);
        } catch (const AuthError&) {
          mac_ok = false;
          // re-parse without verification by flipping the stored tag check:
          // decode the fields directly from a framing-valid prefix
          BitReader r(bits);
          msg.header.psid = static_cast<std::uint16_t>(r.read_uint(16));
          msg.header.generation_time_us = r.read_uint(64);
          msg.pdu.protocol_version = static_cast<std::uint8_t>(r.read_uint(8));
          msg.pdu.message_id = static_cast<std::uint8_t>(r.read_uint(8));
          msg.pdu.station_id = static_cast<std::uint32_t>(r.read_uint(32));
          msg.management.latitude = static_cast<std::int32_t>(r.read_int(32));
          msg.management.longitude = static_cast<std::int32_t>(r.read_int(32));
          msg.management.reference_time_ms =
              static_cast<std::uint16_t>(r.read_uint(16));
          const std::size_t n = (bits.size() - 272) / 74;
          msg.objects.resize(n);
          for (auto& o : msg.objects) {
            o.x_dm = static_cast<std::int16_t>(r.read_int(16));
            o.y_dm = static_cast<std::int16_t>(r.read_int(16));
            o.vx_cmps = static_cast<std::int16_t>(r.read_int(15));
            o.vy_cmps = static_cast<std::int16_t>(r.read_int(15));
            o.delta_t_ms = static_cast<std::uint16_t>(r.read_uint(12));
          }
          msg.mac = r.read_uint(64);
        }
        json j = cpm_to_json(msg);
        j["mac_valid"] = mac_ok;
        j["size_report"] = size_report(msg.objects.size());
        std::cout << j.dump(2) << '\n';
      }
      return 0;
    }

    // experiment subcommands
    RunConfig cfg = load_run_config(preset, config_path);
    cfg.seed = seed;
    cfg.out_dir = out_dir;
    cfg.dump_frames = dump_frames;
    if (noise >= 0) cfg.scene.noise_sigma = noise;
    if (swp->parsed()) {
      if (!fps_list.empty()) cfg.fps_list = fps_list;
      if (!distance_list.empty()) cfg.distance_list = distance_list;
      if (!speed_list.empty()) cfg.speed_list_kmh = speed_list;
    }

    if (cal->parsed()) {
      const CalibrationResult res = calibrate_noise_sigma(cfg);
      if (!res.ok) {
        std::cerr << "calibration failed: no sigma in [0, 64] reaches the "
                     "reference BER window ("
                  << res.iterations << " probes)\n";
        return 1;
      }
      std::cout << "calibrated noise_sigma = " << res.sigma
                << " (achieved ber = " << res.achieved_ber << ", "
                << res.iterations << " probes)\n";
      cfg.scene.noise_sigma = res.sigma;
      std::filesystem::create_directories(cfg.out_dir);
      const std::string path = cfg.out_dir + "/calibrated.json";
      std::ofstream out(path, std::ios::binary);
      out << to_json(cfg) << '\n';
      std::cout << "wrote " << path << '\n';
      return 0;
    }

    const ExperimentResult result = run_experiment(cfg);
    return report_and_write(result, cfg);
  } catch (const RangeError& e) {
    std::cerr << "field error: " << e.what() << '\n';
    return 2;
  } catch (const FramingError& e) {
    std::cerr << "framing error: " << e.what() << '\n';
    return 3;
  } catch (const AuthError& e) {
    std::cerr << "authentication error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
