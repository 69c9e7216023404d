#include "render.hpp"

#include "netpers/graph.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <json.hpp>
#include <stdexcept>

namespace netpers::cli {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string render_json(const Diagram& d, std::string_view property, std::string_view input_digest) {
  nlohmann::ordered_json doc;
  doc["property"] = property;
  doc["births"] = nlohmann::json::array();
  doc["deaths"] = nlohmann::json::array();
  doc["multiplicities"] = nlohmann::json::array();
  for (const Cornerpoint& p : d.points()) {
    doc["births"].push_back(p.birth);
    if (p.at_infinity()) {
      doc["deaths"].push_back("inf");
    } else {
      doc["deaths"].push_back(p.death);
    }
    doc["multiplicities"].push_back(p.multiplicity);
  }
  doc["input_digest"] = input_digest;
  return doc.dump(2) + "\n";
}

namespace {

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const Diagram& d, std::string_view title) {
  constexpr double size = 400;
  constexpr double margin = 40;
  constexpr double band = 20;  // infinity band above the plot square
  double lo = kInfinity;
  double hi = -kInfinity;
  for (const Cornerpoint& p : d.points()) {
    lo = std::min(lo, p.birth);
    hi = std::max(hi, p.at_infinity() ? p.birth : p.death);
  }
  if (d.empty()) {
    lo = 0;
    hi = 1;
  }
  if (hi <= lo) hi = lo + 1;
  const double pad = (hi - lo) * 0.05;
  lo -= pad;
  hi += pad;
  const double plot_top = margin + band;
  auto sx = [&](double x) { return margin + (x - lo) / (hi - lo) * size; };
  auto sy = [&](double y) { return plot_top + size - (y - lo) / (hi - lo) * size; };
  const double inf_y = margin;

  std::string out;
  const double width = size + 2 * margin;
  const double height = size + 2 * margin + band;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width) + "\" height=\"" + fixed(height) +
         "\" viewBox=\"0 0 " + fixed(width) + " " + fixed(height) + "\">\n";
  out += "<title>" + escape(title) + "</title>\n";
  out += "<rect class=\"frame\" x=\"" + fixed(margin) + "\" y=\"" + fixed(plot_top) + "\" width=\"" + fixed(size) +
         "\" height=\"" + fixed(size) + "\" fill=\"none\" stroke=\"#999\"/>\n";
  out += "<line class=\"diagonal\" x1=\"" + fixed(sx(lo)) + "\" y1=\"" + fixed(sy(lo)) + "\" x2=\"" + fixed(sx(hi)) +
         "\" y2=\"" + fixed(sy(hi)) + "\" stroke=\"#555\"/>\n";
  out += "<line class=\"infinity-band\" x1=\"" + fixed(margin) + "\" y1=\"" + fixed(inf_y) + "\" x2=\"" +
         fixed(margin + size) + "\" y2=\"" + fixed(inf_y) + "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
  out += "<text x=\"" + fixed(margin + size + 4) + "\" y=\"" + fixed(inf_y + 4) + "\" font-size=\"12\">inf</text>\n";
  for (const Cornerpoint& p : d.points()) {
    const double x = sx(p.birth);
    const double y = p.at_infinity() ? inf_y : sy(p.death);
    const std::string data = " data-birth=\"" + format_number(p.birth) + "\" data-death=\"" + format_number(p.death) +
                             "\" data-multiplicity=\"" + std::to_string(p.multiplicity) + "\"";
    if (p.at_infinity()) {
      out += "<line class=\"halfline\" x1=\"" + fixed(x) + "\" y1=\"" + fixed(sy(p.birth)) + "\" x2=\"" + fixed(x) +
             "\" y2=\"" + fixed(inf_y) + "\" stroke=\"#c33\" stroke-dasharray=\"2 2\"" + data + "/>\n";
    }
    out += "<circle class=\"point\" cx=\"" + fixed(x) + "\" cy=\"" + fixed(y) + "\" r=\"4\" fill=\"" +
           (p.at_infinity() ? "#c33" : "#236") + "\"" + data + "/>\n";
    if (p.multiplicity > 1) {
      out += "<text class=\"multiplicity\" x=\"" + fixed(x + 6) + "\" y=\"" + fixed(y - 6) + "\" font-size=\"11\">" +
             std::to_string(p.multiplicity) + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace netpers::cli
