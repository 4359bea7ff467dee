#pragma once

#include <string>
#include <vector>

namespace numrange {

// Self-contained polyline plot writer; no plotting dependency so the
// reproduction artifacts build offline. Output is byte-stable when the
// timestamp comment is suppressed.
class SvgPlot {
  public:
    SvgPlot(std::string title, std::string xlabel, std::string ylabel)
        : title_(std::move(title)), xlabel_(std::move(xlabel)), ylabel_(std::move(ylabel)) {}

    void set_log_x(bool on) { log_x_ = on; }
    void set_log_y(bool on) { log_y_ = on; }
    void set_timestamp(bool on) { timestamp_ = on; }

    void add_series(const std::string& name, const std::vector<double>& xs,
                    const std::vector<double>& ys);

    std::string render() const;
    void write(const std::string& path) const;

  private:
    struct Series {
        std::string name;
        std::vector<double> xs, ys;
    };
    std::string title_, xlabel_, ylabel_;
    bool log_x_ = false, log_y_ = false, timestamp_ = true;
    std::vector<Series> series_;
};

}  // namespace numrange
