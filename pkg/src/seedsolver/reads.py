"""Streaming FASTQ reader."""


class FastqError(ValueError):
    pass


def parse_fastq(path):
    """Yield (id, sequence) for each 4-line record; quality strings are only length-checked."""
    with open(path) as fh:
        record = 0
        while True:
            header = fh.readline()
            if not header:
                return
            header = header.rstrip("\r\n")
            if not header:
                # tolerate trailing blank lines
                if not fh.read().strip():
                    return
                raise FastqError(f"record {record + 1}: blank line where header expected")
            record += 1
            seq, plus, qual = (fh.readline().rstrip("\r\n") for _ in range(3))
            if not header.startswith("@"):
                raise FastqError(f"record {record}: header does not start with '@'")
            if not plus.startswith("+"):
                raise FastqError(f"record {record}: missing '+' separator")
            if len(seq) != len(qual):
                raise FastqError(f"record {record}: sequence and quality lengths differ")
            yield header[1:].split()[0] if len(header) > 1 else "", seq.upper()
