#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <png.h>

#include "gridnav/common.hpp"

namespace gridnav {

// 8-bit interleaved RGB raster. Storage type for panoramas, map renders
// and plots.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // height*width*3, row-major

  Image() = default;
  Image(int w, int h, std::uint8_t fill = 0) : width(w), height(h), rgb(std::size_t(w) * h * 3, fill) {}

  std::uint8_t& at(int y, int x, int c) { return rgb[(std::size_t(y) * width + x) * 3 + c]; }
  std::uint8_t at(int y, int x, int c) const { return rgb[(std::size_t(y) * width + x) * 3 + c]; }

  void set(int y, int x, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    at(y, x, 0) = r;
    at(y, x, 1) = g;
    at(y, x, 2) = b;
  }

  bool operator==(const Image& o) const { return width == o.width && height == o.height && rgb == o.rgb; }
};

// Float RGB image with values in [0,1]; the working type for view crops
// and feature extraction.
struct ViewImage {
  int width = 0;
  int height = 0;
  std::vector<float> px;  // height*width*3

  ViewImage() = default;
  ViewImage(int w, int h, float fill = 0.f) : width(w), height(h), px(std::size_t(w) * h * 3, fill) {}

  float& at(int y, int x, int c) { return px[(std::size_t(y) * width + x) * 3 + c]; }
  float at(int y, int x, int c) const { return px[(std::size_t(y) * width + x) * 3 + c]; }
};

inline ViewImage to_float(const Image& im) {
  ViewImage v(im.width, im.height);
  for (std::size_t i = 0; i < im.rgb.size(); ++i) v.px[i] = float(im.rgb[i]) / 255.f;
  return v;
}

inline Image to_u8(const ViewImage& v) {
  Image im(v.width, v.height);
  for (std::size_t i = 0; i < v.px.size(); ++i) {
    float x = std::clamp(v.px[i], 0.f, 1.f);
    im.rgb[i] = std::uint8_t(std::lround(x * 255.f));
  }
  return im;
}

inline void write_png(const Image& im, const std::string& path) {
  FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) fail(Err::UnwritablePath, "cannot open for writing: " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    fail(Err::UnwritablePath, "libpng write failure: " + path);
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, im.width, im.height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_bytep> rows(im.height);
  for (int y = 0; y < im.height; ++y)
    rows[y] = const_cast<png_bytep>(im.rgb.data() + std::size_t(y) * im.width * 3);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

inline Image read_png(const std::string& path) {
  FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) fail(Err::PanoramaMismatch, "cannot open image: " + path);
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    fail(Err::PanoramaMismatch, "libpng read failure: " + path);
  }
  png_init_io(png, fp);
  png_read_info(png, info);
  png_set_expand(png);
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_gray_to_rgb(png);
  png_read_update_info(png, info);
  Image im(int(png_get_image_width(png, info)), int(png_get_image_height(png, info)));
  std::vector<png_bytep> rows(im.height);
  for (int y = 0; y < im.height; ++y) rows[y] = im.rgb.data() + std::size_t(y) * im.width * 3;
  png_read_image(png, rows.data());
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);
  return im;
}

// Binary PPM (P6). Deterministic byte layout, used for golden files.
inline void write_ppm(const Image& im, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::UnwritablePath, "cannot open for writing: " + path);
  out << "P6\n" << im.width << " " << im.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(im.rgb.data()), std::streamsize(im.rgb.size()));
}

inline Image read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::BadArgument, "cannot open image: " + path);
  std::string magic;
  int w = 0, h = 0, maxv = 0;
  in >> magic >> w >> h >> maxv;
  if (magic != "P6" || w <= 0 || h <= 0 || maxv != 255) fail(Err::BadArgument, "not a P6 ppm: " + path);
  in.get();
  Image im(w, h);
  in.read(reinterpret_cast<char*>(im.rgb.data()), std::streamsize(im.rgb.size()));
  if (!in) fail(Err::BadArgument, "truncated ppm: " + path);
  return im;
}

// Bilinear resample with a cyclic (wrap-around) x axis when `wrap_x` is
// set; panorama columns are periodic in azimuth.
inline ViewImage resample_bilinear(const ViewImage& src, int out_w, int out_h) {
  ViewImage dst(out_w, out_h);
  const double sx = double(src.width) / out_w;
  const double sy = double(src.height) / out_h;
  for (int y = 0; y < out_h; ++y) {
    double fy = (y + 0.5) * sy - 0.5;
    int y0 = int(std::floor(fy));
    double wy = fy - y0;
    int ya = std::clamp(y0, 0, src.height - 1);
    int yb = std::clamp(y0 + 1, 0, src.height - 1);
    for (int x = 0; x < out_w; ++x) {
      double fx = (x + 0.5) * sx - 0.5;
      int x0 = int(std::floor(fx));
      double wx = fx - x0;
      int xa = std::clamp(x0, 0, src.width - 1);
      int xb = std::clamp(x0 + 1, 0, src.width - 1);
      for (int c = 0; c < 3; ++c) {
        double top = (1 - wx) * src.at(ya, xa, c) + wx * src.at(ya, xb, c);
        double bot = (1 - wx) * src.at(yb, xa, c) + wx * src.at(yb, xb, c);
        dst.at(y, x, c) = float((1 - wy) * top + wy * bot);
      }
    }
  }
  return dst;
}

}  // namespace gridnav
