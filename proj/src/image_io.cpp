#include "firepx/image_io.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include <jpeglib.h>
#include <png.h>

namespace firepx {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const noexcept {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_for_read(const std::filesystem::path& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw IoError(IoErrorKind::missing_file, "cannot open " + path.string());
    return f;
}

enum class FileFormat { png, jpeg, unknown };

FileFormat sniff_format(std::FILE* f) {
    unsigned char magic[8] = {};
    const std::size_t got = std::fread(magic, 1, sizeof magic, f);
    std::rewind(f);
    if (got >= 8 && png_sig_cmp(magic, 0, 8) == 0) return FileFormat::png;
    if (got >= 2 && magic[0] == 0xFF && magic[1] == 0xD8) return FileFormat::jpeg;
    return FileFormat::unknown;
}

// libpng reports errors through longjmp; everything the unwind would skip
// lives outside the setjmp scope.
struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;

    PngReader() {
        png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png) info = png_create_info_struct(png);
    }
    ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;

    PngWriter() {
        png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png) info = png_create_info_struct(png);
    }
    ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

RgbImage decode_png(std::FILE* f, const std::filesystem::path& path) {
    PngReader reader;
    if (!reader.png || !reader.info)
        throw IoError(IoErrorKind::corrupt_data, "png decoder setup failed for " + path.string());

    std::vector<PixelRgb> pixels;
    std::vector<png_bytep> row_ptrs;
    int width = 0, height = 0;

    if (setjmp(png_jmpbuf(reader.png)))
        throw IoError(IoErrorKind::corrupt_data, "corrupt png: " + path.string());

    png_init_io(reader.png, f);
    png_read_info(reader.png, reader.info);

    width = static_cast<int>(png_get_image_width(reader.png, reader.info));
    height = static_cast<int>(png_get_image_height(reader.png, reader.info));
    const png_byte color_type = png_get_color_type(reader.png, reader.info);
    const png_byte bit_depth = png_get_bit_depth(reader.png, reader.info);

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(reader.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(reader.png);
    if (png_get_valid(reader.png, reader.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(reader.png);
    if (bit_depth == 16) png_set_strip_16(reader.png);
    png_set_strip_alpha(reader.png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(reader.png);
    png_read_update_info(reader.png, reader.info);

    if (png_get_rowbytes(reader.png, reader.info) != static_cast<std::size_t>(width) * 3)
        throw IoError(IoErrorKind::corrupt_data, "unexpected png layout: " + path.string());

    pixels.resize(static_cast<std::size_t>(width) * height);
    row_ptrs.resize(height);
    for (int y = 0; y < height; ++y)
        row_ptrs[y] = reinterpret_cast<png_bytep>(pixels.data() + static_cast<std::size_t>(y) * width);
    png_read_image(reader.png, row_ptrs.data());
    png_read_end(reader.png, nullptr);

    return RgbImage(width, height, std::move(pixels));
}

struct JpegErrorMgr {
    jpeg_error_mgr base;
    std::jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    std::longjmp(mgr->jump, 1);
}

RgbImage decode_jpeg(std::FILE* f, const std::filesystem::path& path) {
    jpeg_decompress_struct cinfo{};
    JpegErrorMgr err{};
    cinfo.err = jpeg_std_error(&err.base);
    err.base.error_exit = jpeg_error_exit;

    std::vector<PixelRgb> pixels;
    int width = 0, height = 0;

    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw IoError(IoErrorKind::corrupt_data, "corrupt jpeg: " + path.string());
    }

    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, f);
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    width = static_cast<int>(cinfo.output_width);
    height = static_cast<int>(cinfo.output_height);
    pixels.resize(static_cast<std::size_t>(width) * height);

    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = reinterpret_cast<JSAMPROW>(
            pixels.data() + static_cast<std::size_t>(cinfo.output_scanline) * width);
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);

    return RgbImage(width, height, std::move(pixels));
}

void encode_png(const std::filesystem::path& path, int width, int height, int color_type,
                const std::vector<png_bytep>& row_ptrs) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw IoError(IoErrorKind::write_failure, "cannot create " + path.string());

    PngWriter writer;
    if (!writer.png || !writer.info)
        throw IoError(IoErrorKind::write_failure, "png encoder setup failed for " + path.string());

    if (setjmp(png_jmpbuf(writer.png)))
        throw IoError(IoErrorKind::write_failure, "png write failed: " + path.string());

    png_init_io(writer.png, f.get());
    png_set_IHDR(writer.png, writer.info, static_cast<png_uint_32>(width),
                 static_cast<png_uint_32>(height), 8, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(writer.png, writer.info);
    png_write_image(writer.png, const_cast<png_bytepp>(row_ptrs.data()));
    png_write_end(writer.png, nullptr);
}

}  // namespace

RgbImage load_image(const std::filesystem::path& path) {
    FilePtr f = open_for_read(path);
    switch (sniff_format(f.get())) {
        case FileFormat::png:
            return decode_png(f.get(), path);
        case FileFormat::jpeg:
            return decode_jpeg(f.get(), path);
        default:
            throw IoError(IoErrorKind::unsupported_format,
                          "not a png or jpeg file: " + path.string());
    }
}

void save_image(const RgbImage& img, const std::filesystem::path& path) {
    std::vector<png_bytep> row_ptrs(img.height());
    for (int y = 0; y < img.height(); ++y) {
        row_ptrs[y] = reinterpret_cast<png_bytep>(
            const_cast<PixelRgb*>(img.pixels().data() + static_cast<std::size_t>(y) * img.width()));
    }
    encode_png(path, img.width(), img.height(), PNG_COLOR_TYPE_RGB, row_ptrs);
}

void write_mask(const RuleMask& mask, const std::filesystem::path& path) {
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(mask.width()) * mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            bytes[static_cast<std::size_t>(y) * mask.width() + x] = mask.get(x, y) ? 255 : 0;

    std::vector<png_bytep> row_ptrs(mask.height());
    for (int y = 0; y < mask.height(); ++y)
        row_ptrs[y] = bytes.data() + static_cast<std::size_t>(y) * mask.width();
    encode_png(path, mask.width(), mask.height(), PNG_COLOR_TYPE_GRAY, row_ptrs);
}

RuleMask load_mask(const std::filesystem::path& path, int expected_width, int expected_height) {
    const RgbImage img = load_image(path);
    if (img.width() != expected_width || img.height() != expected_height)
        throw IoError(IoErrorKind::dimension_mismatch,
                      "mask dimensions " + std::to_string(img.width()) + "x" +
                          std::to_string(img.height()) + " do not match expected " +
                          std::to_string(expected_width) + "x" + std::to_string(expected_height) +
                          ": " + path.string());
    RuleMask mask(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const PixelRgb& p = img.at(x, y);
            mask.set(x, y, (p.r | p.g | p.b) != 0);
        }
    }
    return mask;
}

RgbImage render_overlay(const RgbImage& img, const RuleMask& mask) {
    if (mask.width() != img.width() || mask.height() != img.height())
        throw IoError(IoErrorKind::dimension_mismatch, "overlay mask dimensions do not match image");
    RgbImage out = img;
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x)
            if (mask.get(x, y)) out.at(x, y) = PixelRgb{0, 255, 0};
    return out;
}

}  // namespace firepx
