// Copyright 2026 The qseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qseg/imageio.hpp"

#include <algorithm>
#include <bitset>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include <jpeglib.h>
#include <png.h>

#include "qseg/error.hpp"

namespace qseg {

namespace {

// ---------------------------------------------------------------------------
// PNG

struct PngSource {
    const std::uint8_t *data = nullptr;
    std::size_t size = 0;
    std::size_t pos = 0;
    char message[256] = {};
};

void png_on_error(png_structp png, png_const_charp msg) {
    auto *src = static_cast<PngSource *>(png_get_error_ptr(png));
    std::snprintf(src->message, sizeof(src->message), "%s", msg);
    png_longjmp(png, 1);
}

void png_on_warning(png_structp, png_const_charp) {}

void png_read_mem(png_structp png, png_bytep out, png_size_t len) {
    auto *src = static_cast<PngSource *>(png_get_io_ptr(png));
    if (len > src->size - src->pos) {
        png_error(png, "unexpected end of PNG data");
    }
    std::memcpy(out, src->data + src->pos, len);
    src->pos += len;
}

enum class PngMode { rgb, indices };

struct PngRaster {
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int color_type = 0;
    int bit_depth = 0;
    std::size_t row_bytes = 0;
    std::vector<std::uint8_t> pixels;
    std::vector<png_bytep> rows;
};

// Plain-data locals only: libpng reports errors through longjmp.
bool read_png(PngSource &src, PngMode mode, PngRaster &out) {
    png_structp png =
        png_create_read_struct(PNG_LIBPNG_VER_STRING, &src, png_on_error, png_on_warning);
    if (png == nullptr) {
        std::snprintf(src.message, sizeof(src.message), "out of memory");
        return false;
    }
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        std::snprintf(src.message, sizeof(src.message), "out of memory");
        return false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        return false;
    }
    png_set_read_fn(png, &src, png_read_mem);
    png_read_info(png, info);
    out.width = png_get_image_width(png, info);
    out.height = png_get_image_height(png, info);
    out.color_type = png_get_color_type(png, info);
    out.bit_depth = png_get_bit_depth(png, info);

    if (mode == PngMode::rgb) {
        png_set_expand(png);
        png_set_strip_16(png);
        png_set_strip_alpha(png);
        if (out.color_type == PNG_COLOR_TYPE_GRAY || out.color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
            png_set_gray_to_rgb(png);
        }
    } else {
        if (out.bit_depth == 16) {
            png_set_strip_16(png);
        }
        if (out.bit_depth < 8) {
            png_set_packing(png);
        }
    }
    png_set_interlace_handling(png);
    png_read_update_info(png, info);
    out.row_bytes = png_get_rowbytes(png, info);
    out.pixels.resize(out.row_bytes * out.height);
    out.rows.resize(out.height);
    for (png_uint_32 y = 0; y < out.height; ++y) {
        out.rows[y] = out.pixels.data() + y * out.row_bytes;
    }
    png_read_image(png, out.rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return true;
}

PngRaster read_png_or_throw(std::span<const std::uint8_t> bytes, PngMode mode) {
    if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
        throw DecodeError("not a PNG stream: bad signature", 0);
    }
    PngSource src;
    src.data = bytes.data();
    src.size = bytes.size();
    PngRaster raster;
    if (!read_png(src, mode, raster)) {
        throw DecodeError(std::string("PNG decode failed: ") + src.message, src.pos);
    }
    return raster;
}

Bytes write_png(const std::uint8_t *pixels, std::size_t width, std::size_t height,
                png_uint_32 format) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(width);
    image.height = static_cast<png_uint_32>(height);
    image.format = format;
    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&image, nullptr, &size, 0, pixels, 0, nullptr)) {
        throw std::runtime_error(std::string("PNG encode failed: ") + image.message);
    }
    Bytes out(size);
    if (!png_image_write_to_memory(&image, out.data(), &size, 0, pixels, 0, nullptr)) {
        throw std::runtime_error(std::string("PNG encode failed: ") + image.message);
    }
    out.resize(size);
    return out;
}

// ---------------------------------------------------------------------------
// JPEG

struct JpegError {
    jpeg_error_mgr mgr;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_on_error(j_common_ptr cinfo) {
    auto *err = reinterpret_cast<JpegError *>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

void jpeg_silence(j_common_ptr, int) {}

bool read_jpeg(std::span<const std::uint8_t> bytes, RgbImage &out, JpegError &err,
               std::size_t &consumed) {
    jpeg_decompress_struct cinfo;
    cinfo.err = jpeg_std_error(&err.mgr);
    err.mgr.error_exit = jpeg_on_error;
    err.mgr.emit_message = jpeg_silence;
    if (setjmp(err.jump)) {
        if (cinfo.src != nullptr) {
            consumed = bytes.size() - cinfo.src->bytes_in_buffer;
        }
        jpeg_destroy_decompress(&cinfo);
        return false;
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);
    out.width = cinfo.output_width;
    out.height = cinfo.output_height;
    out.data.resize(3 * out.width * out.height);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = out.data.data() + 3 * out.width * cinfo.output_scanline;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return true;
}

RgbImage decode_png_rgb(std::span<const std::uint8_t> bytes) {
    PngRaster raster = read_png_or_throw(bytes, PngMode::rgb);
    if (raster.row_bytes != 3 * static_cast<std::size_t>(raster.width)) {
        throw DecodeError("PNG decode produced an unexpected row layout");
    }
    RgbImage img;
    img.width = raster.width;
    img.height = raster.height;
    img.data = std::move(raster.pixels);
    return img;
}

RgbImage decode_jpeg_rgb(std::span<const std::uint8_t> bytes) {
    RgbImage img;
    JpegError err{};
    std::size_t consumed = 0;
    if (!read_jpeg(bytes, img, err, consumed)) {
        throw DecodeError(std::string("JPEG decode failed: ") + err.message, consumed);
    }
    return img;
}

} // namespace

std::optional<ImageFormat> sniff_format(std::span<const std::uint8_t> bytes) noexcept {
    static constexpr std::uint8_t png_magic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (bytes.size() >= 8 && std::equal(bytes.begin(), bytes.begin() + 8, png_magic)) {
        return ImageFormat::png;
    }
    if (bytes.size() >= 3 && bytes[0] == 0xff && bytes[1] == 0xd8 && bytes[2] == 0xff) {
        return ImageFormat::jpeg;
    }
    return std::nullopt;
}

RgbImage decode_image(std::span<const std::uint8_t> bytes) {
    const auto format = sniff_format(bytes);
    if (!format) {
        throw DecodeError("unrecognized image format (expected PNG or JPEG)", 0);
    }
    return decode_image(bytes, *format);
}

RgbImage decode_image(std::span<const std::uint8_t> bytes, ImageFormat format) {
    return format == ImageFormat::png ? decode_png_rgb(bytes) : decode_jpeg_rgb(bytes);
}

Bytes encode_png(const RgbImage &image) {
    return write_png(image.data.data(), image.width, image.height, PNG_FORMAT_RGB);
}

Bytes encode_jpeg(const RgbImage &image, int quality) {
    jpeg_compress_struct cinfo;
    jpeg_error_mgr jerr;
    cinfo.err = jpeg_std_error(&jerr);
    jpeg_create_compress(&cinfo);
    unsigned char *buffer = nullptr;
    unsigned long size = 0;
    jpeg_mem_dest(&cinfo, &buffer, &size);
    cinfo.image_width = static_cast<JDIMENSION>(image.width);
    cinfo.image_height = static_cast<JDIMENSION>(image.height);
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    // Full-resolution chroma.
    for (int c = 0; c < cinfo.num_components; ++c) {
        cinfo.comp_info[c].h_samp_factor = 1;
        cinfo.comp_info[c].v_samp_factor = 1;
    }
    jpeg_start_compress(&cinfo, TRUE);
    while (cinfo.next_scanline < cinfo.image_height) {
        auto *row = const_cast<JSAMPROW>(image.data.data() + 3 * image.width * cinfo.next_scanline);
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    Bytes out(buffer, buffer + size);
    jpeg_destroy_compress(&cinfo);
    std::free(buffer);
    return out;
}

GrayImage to_gray(const RgbImage &image) {
    GrayImage out(image.width, image.height);
    for (std::size_t i = 0; i < image.pixel_count(); ++i) {
        const double r = image.data[3 * i] / 255.0;
        const double g = image.data[3 * i + 1] / 255.0;
        const double b = image.data[3 * i + 2] / 255.0;
        out.data[i] = std::clamp(0.2125 * r + 0.7154 * g + 0.0721 * b, 0.0, 1.0);
    }
    return out;
}

GroundTruthMask load_mask(std::span<const std::uint8_t> bytes) {
    PngRaster raster = read_png_or_throw(bytes, PngMode::indices);
    const bool paletted = raster.color_type == PNG_COLOR_TYPE_PALETTE;
    if (!paletted && raster.color_type != PNG_COLOR_TYPE_GRAY) {
        throw FormatError("mask must be a single-channel or paletted PNG");
    }
    GroundTruthMask mask(raster.width, raster.height);
    std::bitset<256> bad;
    for (std::size_t y = 0; y < raster.height; ++y) {
        const std::uint8_t *row = raster.rows[y];
        for (std::size_t x = 0; x < raster.width; ++x) {
            const std::uint8_t v = row[x];
            std::uint8_t out = v;
            if (paletted) {
                out = v == 0     ? mask_value::background
                      : v == 255 ? mask_value::void_pixel
                                 : mask_value::foreground;
            } else if (v != mask_value::background && v != mask_value::foreground &&
                       v != mask_value::void_pixel) {
                bad.set(v);
            }
            mask.values[y * raster.width + x] = out;
        }
    }
    if (bad.any()) {
        std::string list;
        for (std::size_t v = 0; v < 256; ++v) {
            if (bad.test(v)) {
                list += (list.empty() ? "" : ", ") + std::to_string(v);
            }
        }
        throw FormatError("mask contains values outside {0, 1, 255}: " + list);
    }
    return mask;
}

Bytes encode_mask_png(const GroundTruthMask &mask) {
    return write_png(mask.values.data(), mask.width, mask.height, PNG_FORMAT_GRAY);
}

const std::array<Rgb8, 8> &label_palette() noexcept {
    static constexpr std::array<Rgb8, 8> palette = {{
        {0, 0, 0},
        {230, 25, 75},
        {60, 180, 75},
        {255, 225, 25},
        {0, 130, 200},
        {245, 130, 48},
        {145, 30, 180},
        {70, 240, 240},
    }};
    return palette;
}

RgbImage colorize_labelmap(const LabelMap &labels) {
    const auto &palette = label_palette();
    RgbImage out(labels.width, labels.height);
    for (std::size_t i = 0; i < labels.pixel_count(); ++i) {
        const std::uint8_t l = labels.labels[i];
        if (l >= palette.size()) {
            throw InputError("label " + std::to_string(l) + " has no palette color");
        }
        out.set(i, palette[l]);
    }
    return out;
}

Bytes render_labelmap(const LabelMap &labels) {
    return encode_png(colorize_labelmap(labels));
}

LabelMap parse_labelmap(std::span<const std::uint8_t> png_bytes) {
    const RgbImage img = decode_image(png_bytes, ImageFormat::png);
    const auto &palette = label_palette();
    LabelMap out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const Rgb8 px = img.at(i);
        const auto it = std::find(palette.begin(), palette.end(), px);
        if (it == palette.end()) {
            throw FormatError("pixel " + std::to_string(i) + " is not a palette color");
        }
        out.labels[i] = static_cast<std::uint8_t>(it - palette.begin());
    }
    return out;
}

Bytes read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path &path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out.write(reinterpret_cast<const char *>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::runtime_error("short write to " + path.string());
    }
}

} // namespace qseg
