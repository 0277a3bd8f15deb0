#include "vlcp/camera.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

namespace vlcp {

void write_pgm(std::ostream& os, const CameraFrame& frame) {
  os << "P5\n" << frame.width() << ' ' << frame.height() << "\n255\n";
  os.write(reinterpret_cast<const char*>(frame.pixels.data()),
           static_cast<std::streamsize>(frame.pixels.size()));
}

void write_pgm_file(const std::string& path, const CameraFrame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  write_pgm(out, frame);
}

}  // namespace vlcp
