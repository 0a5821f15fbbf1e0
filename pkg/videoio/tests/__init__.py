import numpy as np


def y4m_bytes(planes, width, height, fps='25:1', chroma='420jpeg',
              chroma_value=128):
    '''YUV4MPEG2 stream holding the given luma planes (2-d uint8 arrays or
    raw bytes) with flat chroma.'''
    header = 'YUV4MPEG2 W%d H%d F%s Ip A1:1' % (width, height, fps)
    if chroma:
        header += ' C%s' % chroma
    chroma_size = 2 * ((width + 1) // 2) * ((height + 1) // 2)
    out = [header.encode('ascii') + b'\n']
    for plane in planes:
        out.append(b'FRAME\n')
        if not isinstance(plane, bytes):
            plane = np.asarray(plane, dtype=np.uint8).tobytes()
        out.append(plane)
        out.append(bytes([chroma_value]) * chroma_size)
    return b''.join(out)


def raw_yuv_bytes(planes, width, height, chroma_value=128):
    chroma_size = 2 * ((width + 1) // 2) * ((height + 1) // 2)
    return b''.join(np.asarray(plane, dtype=np.uint8).tobytes() +
                    bytes([chroma_value]) * chroma_size
                    for plane in planes)


def pgm_bytes(plane, comment=None, maxval=255):
    plane = np.asarray(plane, dtype=np.uint8)
    height, width = plane.shape
    header = b'P5\n'
    if comment:
        header += b'# ' + comment.encode('ascii') + b'\n'
    header += b'%d %d\n%d\n' % (width, height, maxval)
    return header + plane.tobytes()


def write_file(path, data):
    with open(path, 'wb') as fh:
        fh.write(data)
    return path
