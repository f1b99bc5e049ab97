#include "swarm/svg_plot.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

namespace swarm {

namespace {

class Canvas {
public:
    explicit Canvas(double side) : side_(side) {}

    double px(double x) const { return x * kPixelsPerMeter; }
    double py(double y) const { return (side_ - y) * kPixelsPerMeter; }

    static std::string num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return buf;
    }

    std::string circle(Vec2 c, double r_px, const char* cls, const char* style) const {
        return "<circle class=\"" + std::string(cls) + "\" cx=\"" + num(px(c.x)) + "\" cy=\"" +
               num(py(c.y)) + "\" r=\"" + num(r_px) + "\" " + style + "/>\n";
    }

private:
    double side_;
};

}  // namespace

std::string render_trajectory_svg(const TrialLog& log) {
    const Terrain& terrain = log.config.terrain;
    const Canvas cv(terrain.side);
    const double size = terrain.side * kPixelsPerMeter;
    std::ostringstream svg;

    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Canvas::num(size)
        << "\" height=\"" << Canvas::num(size) << "\" viewBox=\"0 0 " << Canvas::num(size) << ' '
        << Canvas::num(size) << "\">\n";
    svg << "<rect class=\"field\" x=\"0\" y=\"0\" width=\"" << Canvas::num(size) << "\" height=\""
        << Canvas::num(size) << "\" fill=\"#f4ead5\" stroke=\"#333333\" stroke-width=\"2\"/>\n";

    for (const auto& h : terrain.hills)
        svg << cv.circle(h.center, h.radius * kPixelsPerMeter, "hill",
                         "fill=\"#c8b48c\" fill-opacity=\"0.6\" stroke=\"none\"");
    for (const auto& o : terrain.obstacles)
        svg << cv.circle(o.center, o.radius * kPixelsPerMeter, "obstacle",
                         "fill=\"#6e6e6e\" fill-opacity=\"0.8\" stroke=\"#444444\"");
    svg << cv.circle(terrain.goal.center, terrain.goal.radius * kPixelsPerMeter, "goal",
                     "fill=\"#7fc97f\" fill-opacity=\"0.25\" stroke=\"#2e7d32\" stroke-width=\"2\" "
                     "stroke-dasharray=\"8 4\"");

    const int n = log.n_agents();
    if (!log.steps.empty()) {
        // Followers first so the leader path is drawn on top.
        std::vector<int> order;
        for (int i = 0; i < n; ++i)
            if (i != log.leader_id) order.push_back(i);
        order.push_back(log.leader_id);

        for (int id : order) {
            const bool leader = id == log.leader_id;
            svg << "<path class=\"" << (leader ? "leader" : "follower") << "\" data-agent=\"" << id
                << "\" fill=\"none\" stroke=\"" << (leader ? "#f2c200" : "#1f5fd1")
                << "\" stroke-width=\"" << (leader ? "2.5" : "1.2") << "\" d=\"";
            bool first = true;
            for (const auto& rec : log.steps) {
                const Vec2 p = rec.agents[id].position;
                svg << (first ? "M" : " L") << Canvas::num(cv.px(p.x)) << ' ' << Canvas::num(cv.py(p.y));
                first = false;
            }
            svg << "\"/>\n";
        }

        std::vector<double> last_mark(n, -1e300);
        for (const auto& rec : log.steps) {
            for (const auto& a : rec.agents) {
                if (a.command.voltage <= 0.0 || rec.time - last_mark[a.id] < 1.0 - 1e-9) continue;
                last_mark[a.id] = rec.time;
                svg << cv.circle(a.position, 4.0, "stim",
                                 "fill=\"none\" stroke=\"#e41a1c\" stroke-width=\"1\"");
            }
        }
        for (const auto& a : log.steps.back().agents)
            svg << cv.circle(a.position, 3.5, "final", "fill=\"#000000\"");
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace swarm
